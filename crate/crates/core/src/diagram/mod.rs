//! Combinatorial model of punctured ball tangle diagrams.
//!
//! A diagram is a perfect matching ("arcs") on a set of ports: marked
//! points on the outer boundary circle, marked points on each hole
//! boundary, and the four ends of each crossing. Boundary slots on a
//! 4-point circle are labeled 1=NW, 2=NE, 3=SE, 4=SW. Crossing slots are
//! labeled counterclockwise 0..3 starting at the incoming under-strand,
//! so the under-strand occupies slots 0 and 2 and the over-strand slots
//! 1 and 3. Crossing-free closed circles are tracked by a count.
//!
//! Geometric planarity is not verified; every operation is a relabeling
//! or a splice of matchings, and diagrams built through the expression
//! layer are planar by construction.

mod delta;
mod expr;
mod raw;

pub use delta::{basis_matching, delta_gadgets, delta_pair, insert_delta_site, DeltaSite};
pub use expr::{elaborate, parse_expr, ElabError, ParseError, TangleExpr};
pub use raw::{parse_raw, write_raw, RawError};

use thiserror::Error;

/// Which boundary circle or crossing a port belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PortOwner {
    Outer,
    /// 1-based hole index.
    Hole(usize),
    /// 0-based crossing index.
    Crossing(usize),
}

/// A marked point: boundary slots are 1-based, crossing slots are 0..3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Port {
    pub owner: PortOwner,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("port {0:?} does not exist in this diagram")]
    NoSuchPort(Port),
    #[error("arcs are not a perfect matching: port {0:?} appears {1} times")]
    NotAMatching(Port, usize),
    #[error("operation needs {expected}, got {got}")]
    Arity { expected: String, got: String },
    #[error("no crossing with index {0}")]
    NoSuchCrossing(usize),
    #[error("no arc with index {0}")]
    NoSuchArc(usize),
}

/// Smoothing choice at a crossing: A joins slots (0,1) and (2,3),
/// B joins (0,3) and (1,2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Smoothing {
    A,
    B,
}

/// Closure of a 4-point tangle: the numerator closure joins NW–NE and
/// SW–SE outside; the denominator closure joins NW–SW and NE–SE.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Closure {
    Numerator,
    Denominator,
}

/// The two crossingless 4-point tangles used to fill holes: fundamental
/// tangle 1 has vertical arcs (NW–SW, NE–SE), fundamental tangle 2 has
/// horizontal arcs (NW–NE, SW–SE).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fundamental {
    One,
    Two,
}

/// An n-punctured ball tangle diagram.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    outer_points: usize,
    hole_points: Vec<usize>,
    crossings: usize,
    /// Perfect matching on flat port ids; each pair is stored once.
    arcs: Vec<(u32, u32)>,
    free_loops: usize,
}

impl PartialEq for TangleDiagram {
    /// Structural equality: arcs compare as an unordered matching.
    fn eq(&self, other: &Self) -> bool {
        self.outer_points == other.outer_points
            && self.hole_points == other.hole_points
            && self.crossings == other.crossings
            && self.free_loops == other.free_loops
            && self.normalized_arcs() == other.normalized_arcs()
    }
}

impl Eq for TangleDiagram {}

impl TangleDiagram {
    /// Builds a diagram and checks the perfect-matching invariant.
    pub fn new(
        outer_points: usize,
        hole_points: Vec<usize>,
        crossings: usize,
        arcs: Vec<(Port, Port)>,
        free_loops: usize,
    ) -> Result<TangleDiagram, DiagramError> {
        let mut d = TangleDiagram {
            outer_points,
            hole_points,
            crossings,
            arcs: Vec::with_capacity(arcs.len()),
            free_loops,
        };
        let mut flat = Vec::with_capacity(arcs.len());
        for (p, q) in arcs {
            flat.push((d.port_id(p)?, d.port_id(q)?));
        }
        d.arcs = flat;
        d.validate()?;
        Ok(d)
    }

    pub fn outer_points(&self) -> usize {
        self.outer_points
    }

    pub fn holes(&self) -> usize {
        self.hole_points.len()
    }

    pub fn hole_points(&self, hole: usize) -> usize {
        self.hole_points[hole - 1]
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Lists the arcs as port pairs.
    pub fn arcs(&self) -> Vec<(Port, Port)> {
        self.arcs.iter().map(|&(a, b)| (self.port_of(a), self.port_of(b))).collect()
    }

    fn normalized_arcs(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> =
            self.arcs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        v.sort_unstable();
        v
    }

    pub fn is_closed(&self) -> bool {
        self.outer_points == 0 && self.hole_points.is_empty()
    }

    /// True when the diagram is a ball tangle with 4 outer points and the
    /// stated number of 4-point holes.
    pub fn is_standard(&self, holes: usize) -> bool {
        self.outer_points == 4
            && self.hole_points.len() == holes
            && self.hole_points.iter().all(|&m| m == 4)
    }

    fn total_ports(&self) -> usize {
        self.outer_points + self.hole_points.iter().sum::<usize>() + 4 * self.crossings
    }

    fn port_id(&self, p: Port) -> Result<u32, DiagramError> {
        let id = match p.owner {
            PortOwner::Outer => {
                if p.slot == 0 || p.slot > self.outer_points {
                    return Err(DiagramError::NoSuchPort(p));
                }
                p.slot - 1
            }
            PortOwner::Hole(h) => {
                if h == 0 || h > self.hole_points.len() {
                    return Err(DiagramError::NoSuchPort(p));
                }
                if p.slot == 0 || p.slot > self.hole_points[h - 1] {
                    return Err(DiagramError::NoSuchPort(p));
                }
                self.outer_points + self.hole_points[..h - 1].iter().sum::<usize>() + p.slot - 1
            }
            PortOwner::Crossing(j) => {
                if j >= self.crossings || p.slot > 3 {
                    return Err(DiagramError::NoSuchPort(p));
                }
                self.outer_points + self.hole_points.iter().sum::<usize>() + 4 * j + p.slot
            }
        };
        Ok(id as u32)
    }

    fn port_of(&self, id: u32) -> Port {
        let mut id = id as usize;
        if id < self.outer_points {
            return Port { owner: PortOwner::Outer, slot: id + 1 };
        }
        id -= self.outer_points;
        for (h, &m) in self.hole_points.iter().enumerate() {
            if id < m {
                return Port { owner: PortOwner::Hole(h + 1), slot: id + 1 };
            }
            id -= m;
        }
        Port { owner: PortOwner::Crossing(id / 4), slot: id % 4 }
    }

    /// Checks that the arcs form a perfect matching on the port set.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let n = self.total_ports();
        let mut seen = vec![0u8; n];
        for &(a, b) in &self.arcs {
            for id in [a, b] {
                let id = id as usize;
                if id >= n {
                    return Err(DiagramError::NoSuchPort(self.port_of(id as u32)));
                }
                seen[id] += 1;
            }
        }
        for (id, &count) in seen.iter().enumerate() {
            if count != 1 {
                return Err(DiagramError::NotAMatching(self.port_of(id as u32), count as usize));
            }
        }
        Ok(())
    }
}

/// Splice plan: a set of ports of a combined diagram gets welded in
/// pairs (identified pointwise), the rest survive under a relabeling.
/// Strands are traced through welds; closed paths that touch no
/// surviving port become free loops.
struct Splice {
    /// arc partner for every old port
    arc_nb: Vec<u32>,
    /// weld partner, or u32::MAX
    weld_nb: Vec<u32>,
    /// new id for surviving ports, or u32::MAX for welded ones
    new_id: Vec<u32>,
}

impl Splice {
    fn new(total_old: usize, arcs: &[(u32, u32)]) -> Splice {
        let mut arc_nb = vec![u32::MAX; total_old];
        for &(a, b) in arcs {
            arc_nb[a as usize] = b;
            arc_nb[b as usize] = a;
        }
        Splice { arc_nb, weld_nb: vec![u32::MAX; total_old], new_id: vec![u32::MAX; total_old] }
    }

    fn weld(&mut self, a: u32, b: u32) {
        debug_assert_eq!(self.weld_nb[a as usize], u32::MAX);
        debug_assert_eq!(self.weld_nb[b as usize], u32::MAX);
        self.weld_nb[a as usize] = b;
        self.weld_nb[b as usize] = a;
    }

    fn keep(&mut self, old: u32, new: u32) {
        self.new_id[old as usize] = new;
    }

    /// Returns the new arc list (on new ids) and the number of closed
    /// loops swallowed by the welds.
    fn run(&self) -> (Vec<(u32, u32)>, usize) {
        let n = self.arc_nb.len();
        let mut visited = vec![false; n];
        let mut new_arcs = Vec::new();
        for start in 0..n as u32 {
            if self.new_id[start as usize] == u32::MAX || visited[start as usize] {
                continue;
            }
            visited[start as usize] = true;
            let mut cur = start;
            let end = loop {
                let partner = self.arc_nb[cur as usize];
                debug_assert_ne!(partner, u32::MAX, "port without arc");
                visited[partner as usize] = true;
                if self.new_id[partner as usize] != u32::MAX {
                    break partner;
                }
                let welded = self.weld_nb[partner as usize];
                debug_assert_ne!(welded, u32::MAX, "removed port without weld");
                visited[welded as usize] = true;
                cur = welded;
            };
            new_arcs.push((self.new_id[start as usize], self.new_id[end as usize]));
        }
        // Whatever is left unvisited sits on closed weld-arc cycles.
        let mut loops = 0;
        for start in 0..n as u32 {
            if visited[start as usize] || self.arc_nb[start as usize] == u32::MAX {
                continue;
            }
            loops += 1;
            let mut cur = start;
            loop {
                visited[cur as usize] = true;
                let partner = self.arc_nb[cur as usize];
                visited[partner as usize] = true;
                let welded = self.weld_nb[partner as usize];
                debug_assert_ne!(welded, u32::MAX);
                if welded == start {
                    break;
                }
                cur = welded;
            }
        }
        (new_arcs, loops)
    }
}

/// The crossingless primitives and twist chains.
impl TangleDiagram {
    /// Two vertical arcs NW–SW and NE–SE; fundamental tangle 1.
    pub fn inf_tangle() -> TangleDiagram {
        TangleDiagram {
            outer_points: 4,
            hole_points: vec![],
            crossings: 0,
            arcs: vec![(0, 3), (1, 2)],
            free_loops: 0,
        }
    }

    /// Two horizontal arcs NW–NE and SW–SE; fundamental tangle 2.
    pub fn zero_tangle() -> TangleDiagram {
        TangleDiagram {
            outer_points: 4,
            hole_points: vec![],
            crossings: 0,
            arcs: vec![(0, 1), (3, 2)],
            free_loops: 0,
        }
    }

    pub fn fundamental(which: Fundamental) -> TangleDiagram {
        match which {
            Fundamental::One => TangleDiagram::inf_tangle(),
            Fundamental::Two => TangleDiagram::zero_tangle(),
        }
    }

    /// A single crossing-free circle.
    pub fn free_circle() -> TangleDiagram {
        TangleDiagram {
            outer_points: 0,
            hole_points: vec![],
            crossings: 0,
            arcs: vec![],
            free_loops: 1,
        }
    }

    /// The identity spherical tangle: one 4-point hole connected
    /// straight through, hole.k–outer.k.
    pub fn identity_spherical() -> TangleDiagram {
        TangleDiagram {
            outer_points: 4,
            hole_points: vec![4],
            crossings: 0,
            arcs: vec![(0, 4), (1, 5), (2, 6), (3, 7)],
            free_loops: 0,
        }
    }

    /// Chain of |p| crossings side by side; the sign of p selects the
    /// crossing chirality. htwist(0) is the horizontal-arcs tangle.
    pub fn htwist(p: i64) -> TangleDiagram {
        let count = p.unsigned_abs() as usize;
        if count == 0 {
            return TangleDiagram::zero_tangle();
        }
        // A positive crossing is wired slot0=NW, slot1=SW, slot2=SE,
        // slot3=NE, which makes the numerator closure of a single
        // crossing contribute A^{+1}. Negative twists use the mirrored
        // wiring (slots shifted by one).
        let shift = if p > 0 { 0 } else { 1 };
        let west = |j: usize| -> [(usize, usize); 2] {
            // (NW-ish slot, SW-ish slot) of crossing j
            [(j, (0 + shift) % 4), (j, (1 + shift) % 4)]
        };
        let east = |j: usize| -> [(usize, usize); 2] {
            // (NE-ish slot, SE-ish slot) of crossing j
            [(j, (3 + shift) % 4), (j, (2 + shift) % 4)]
        };
        let cross = |(j, s): (usize, usize)| Port { owner: PortOwner::Crossing(j), slot: s };
        let outer = |slot: usize| Port { owner: PortOwner::Outer, slot };
        let mut arcs = Vec::new();
        arcs.push((outer(1), cross(west(0)[0])));
        arcs.push((outer(4), cross(west(0)[1])));
        for j in 0..count - 1 {
            arcs.push((cross(east(j)[0]), cross(west(j + 1)[0])));
            arcs.push((cross(east(j)[1]), cross(west(j + 1)[1])));
        }
        arcs.push((cross(east(count - 1)[0]), outer(2)));
        arcs.push((cross(east(count - 1)[1]), outer(3)));
        TangleDiagram::new(4, vec![], count, arcs, 0).expect("twist chain is well formed")
    }

    /// Chain of |q| crossings stacked vertically. vtwist(0) is the
    /// vertical-arcs tangle; a single crossing equals htwist(±1).
    pub fn vtwist(q: i64) -> TangleDiagram {
        if q == 0 {
            return TangleDiagram::inf_tangle();
        }
        // A vertical chain is the rotated horizontal chain with every
        // crossing flipped back to the same chirality.
        TangleDiagram::htwist(q).rot().mirror()
    }
}

/// Relabeling operations.
impl TangleDiagram {
    fn relabel(&self, map: impl Fn(&TangleDiagram, u32) -> u32) -> TangleDiagram {
        let arcs = self.arcs.iter().map(|&(a, b)| (map(self, a), map(self, b))).collect();
        let d = TangleDiagram { arcs, ..self.clone() };
        debug_assert!(d.validate().is_ok());
        d
    }

    fn rotate_boundary(&self, p: Port, by: usize, which_holes: &dyn Fn(usize) -> bool, outer_too: bool) -> Port {
        match p.owner {
            PortOwner::Outer if outer_too => Port {
                owner: PortOwner::Outer,
                slot: (p.slot - 1 + by) % self.outer_points + 1,
            },
            PortOwner::Hole(h) if which_holes(h) => Port {
                owner: PortOwner::Hole(h),
                slot: (p.slot - 1 + by) % self.hole_points[h - 1] + 1,
            },
            _ => p,
        }
    }

    fn relabel_ports(&self, f: impl Fn(&TangleDiagram, Port) -> Port) -> TangleDiagram {
        self.relabel(|d, id| {
            let p = f(d, d.port_of(id));
            d.port_id(p).expect("relabel stays in range")
        })
    }

    /// Quarter-turn relabeling of every boundary circle (slot k -> k+1).
    pub fn rot(&self) -> TangleDiagram {
        self.relabel_ports(|d, p| d.rotate_boundary(p, 1, &|_| true, true))
    }

    /// Quarter-turn of the hole labels only. Requires exactly one hole.
    pub fn r1(&self) -> Result<TangleDiagram, DiagramError> {
        if self.hole_points.len() != 1 {
            return Err(DiagramError::Arity {
                expected: "exactly one hole".into(),
                got: format!("{} holes", self.hole_points.len()),
            });
        }
        Ok(self.relabel_ports(|d, p| d.rotate_boundary(p, 1, &|h| h == 1, false)))
    }

    /// Quarter-turn of the outer labels only.
    pub fn r2(&self) -> Result<TangleDiagram, DiagramError> {
        if self.outer_points == 0 {
            return Err(DiagramError::Arity {
                expected: "a diagram with outer boundary".into(),
                got: "closed diagram".into(),
            });
        }
        Ok(self.relabel_ports(|d, p| d.rotate_boundary(p, 1, &|_| false, true)))
    }

    /// Flips every crossing by shifting its slot labels by one, which
    /// exchanges the A and B smoothings (over- and under-strand swap).
    pub fn mirror(&self) -> TangleDiagram {
        self.relabel_ports(|_, p| match p.owner {
            PortOwner::Crossing(j) => Port { owner: PortOwner::Crossing(j), slot: (p.slot + 1) % 4 },
            _ => p,
        })
    }

    /// Exchanges the roles of the (unique, 4-point) hole and the outer
    /// boundary, slot k to slot k.
    pub fn swap(&self) -> Result<TangleDiagram, DiagramError> {
        if self.outer_points != 4 || self.hole_points != vec![4] {
            return Err(DiagramError::Arity {
                expected: "a spherical diagram (4 outer points, one 4-point hole)".into(),
                got: format!("{} outer points, holes {:?}", self.outer_points, self.hole_points),
            });
        }
        let d = self.relabel_ports(|_, p| match p.owner {
            PortOwner::Outer => Port { owner: PortOwner::Hole(1), slot: p.slot },
            PortOwner::Hole(1) => Port { owner: PortOwner::Outer, slot: p.slot },
            _ => p,
        });
        Ok(d)
    }

    fn flip_boundary(&self, p: Port, pair: [usize; 4]) -> Port {
        // pair maps slot k (1-based) to its reflected slot
        match p.owner {
            PortOwner::Outer if self.outer_points == 4 => {
                Port { owner: PortOwner::Outer, slot: pair[p.slot - 1] }
            }
            PortOwner::Hole(h) if self.hole_points[h - 1] == 4 => {
                Port { owner: PortOwner::Hole(h), slot: pair[p.slot - 1] }
            }
            PortOwner::Crossing(j) => {
                // Reflection reverses the cyclic slot order and swaps
                // over/under; the combination fixes the A/B pairings.
                let perm = [1, 0, 3, 2];
                Port { owner: PortOwner::Crossing(j), slot: perm[p.slot] }
            }
            _ => p,
        }
    }

    /// Reflection across the vertical axis (NW<->NE, SW<->SE) combined
    /// with the over/under swap of a 180-degree rotation in space; the
    /// bracket-relevant smoothing structure of each crossing is kept.
    pub fn hflip(&self) -> TangleDiagram {
        self.relabel_ports(|d, p| d.flip_boundary(p, [2, 1, 4, 3]))
    }

    /// Reflection across the horizontal axis (NW<->SW, NE<->SE).
    pub fn vflip(&self) -> TangleDiagram {
        self.relabel_ports(|d, p| d.flip_boundary(p, [4, 3, 2, 1]))
    }
}

/// Splicing operations: filling holes, closures, sums, smoothing.
impl TangleDiagram {
    /// Fills every hole: hole i's boundary points are identified with
    /// arg i's outer points slotwise. The args' holes survive, renumbered
    /// in argument order.
    pub fn fill(&self, args: &[TangleDiagram]) -> Result<TangleDiagram, DiagramError> {
        if args.len() != self.hole_points.len() {
            return Err(DiagramError::Arity {
                expected: format!("{} filler tangles", self.hole_points.len()),
                got: format!("{}", args.len()),
            });
        }
        for (i, a) in args.iter().enumerate() {
            if a.outer_points != self.hole_points[i] {
                return Err(DiagramError::Arity {
                    expected: format!("filler {} with {} outer points", i + 1, self.hole_points[i]),
                    got: format!("{} outer points", a.outer_points),
                });
            }
        }
        self.fill_selected(&(1..=self.hole_points.len()).zip(args).collect::<Vec<_>>())
    }

    /// Fills a single hole (1-based index), keeping the other holes.
    pub fn fill_hole(&self, hole: usize, arg: &TangleDiagram) -> Result<TangleDiagram, DiagramError> {
        if hole == 0 || hole > self.hole_points.len() {
            return Err(DiagramError::Arity {
                expected: format!("hole index in 1..={}", self.hole_points.len()),
                got: format!("{hole}"),
            });
        }
        if arg.outer_points != self.hole_points[hole - 1] {
            return Err(DiagramError::Arity {
                expected: format!("filler with {} outer points", self.hole_points[hole - 1]),
                got: format!("{} outer points", arg.outer_points),
            });
        }
        self.fill_selected(&[(hole, arg)])
    }

    /// Shared machinery: welds the listed holes to their fillers. The
    /// resulting hole order is: the head's unfilled holes in order, then
    /// each filler's holes in argument order.
    fn fill_selected(&self, fills: &[(usize, &TangleDiagram)]) -> Result<TangleDiagram, DiagramError> {
        let head_total = self.total_ports();
        let mut offsets = Vec::with_capacity(fills.len());
        let mut total_old = head_total;
        for (_, arg) in fills {
            offsets.push(total_old as u32);
            total_old += arg.total_ports();
        }

        // Combined old arc list.
        let mut arcs = self.arcs.clone();
        for ((_, arg), &off) in fills.iter().zip(&offsets) {
            arcs.extend(arg.arcs.iter().map(|&(a, b)| (a + off, b + off)));
        }
        let mut sp = Splice::new(total_old, &arcs);

        // Welds: filled hole slot <-> filler outer slot.
        for ((hole, arg), &off) in fills.iter().zip(&offsets) {
            for slot in 1..=self.hole_points[hole - 1] {
                let hp = self.port_id(Port { owner: PortOwner::Hole(*hole), slot })?;
                let op = arg.port_id(Port { owner: PortOwner::Outer, slot })?;
                sp.weld(hp, op + off);
            }
        }

        // New port layout.
        let filled: Vec<usize> = fills.iter().map(|(h, _)| *h).collect();
        let mut new_hole_points = Vec::new();
        let mut new_id = 0u32;
        for slot in 1..=self.outer_points {
            let old = self.port_id(Port { owner: PortOwner::Outer, slot })?;
            sp.keep(old, new_id);
            new_id += 1;
        }
        // Head's surviving holes first, in order.
        for h in 1..=self.hole_points.len() {
            if filled.contains(&h) {
                continue;
            }
            new_hole_points.push(self.hole_points[h - 1]);
            for slot in 1..=self.hole_points[h - 1] {
                let old = self.port_id(Port { owner: PortOwner::Hole(h), slot })?;
                sp.keep(old, new_id);
                new_id += 1;
            }
        }
        // Then each filler's holes, in argument order.
        for ((_, arg), &off) in fills.iter().zip(&offsets) {
            for h in 1..=arg.hole_points.len() {
                new_hole_points.push(arg.hole_points[h - 1]);
                for slot in 1..=arg.hole_points[h - 1] {
                    let old = arg.port_id(Port { owner: PortOwner::Hole(h), slot })?;
                    sp.keep(old + off, new_id);
                    new_id += 1;
                }
            }
        }
        // Crossings: head's, then each filler's.
        let mut new_crossings = 0usize;
        let keep_crossings = |sp: &mut Splice, d: &TangleDiagram, off: u32, base: &mut u32| {
            for j in 0..d.crossings {
                for slot in 0..4 {
                    let old = d.port_id(Port { owner: PortOwner::Crossing(j), slot }).unwrap();
                    sp.keep(old + off, *base);
                    *base += 1;
                }
            }
        };
        let mut base = new_id;
        keep_crossings(&mut sp, self, 0, &mut base);
        new_crossings += self.crossings;
        for ((_, arg), &off) in fills.iter().zip(&offsets) {
            keep_crossings(&mut sp, arg, off, &mut base);
            new_crossings += arg.crossings;
        }

        let (new_arcs, loops) = sp.run();
        let d = TangleDiagram {
            outer_points: self.outer_points,
            hole_points: new_hole_points,
            crossings: new_crossings,
            arcs: new_arcs,
            free_loops: self.free_loops
                + fills.iter().map(|(_, a)| a.free_loops).sum::<usize>()
                + loops,
        };
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Closes a 4-point tangle without holes into a link diagram.
    pub fn close(&self, kind: Closure) -> Result<TangleDiagram, DiagramError> {
        if self.outer_points != 4 || !self.hole_points.is_empty() {
            return Err(DiagramError::Arity {
                expected: "a 4-point tangle without holes".into(),
                got: format!("{} outer points, {} holes", self.outer_points, self.hole_points.len()),
            });
        }
        let mut sp = Splice::new(self.total_ports(), &self.arcs);
        let o = |slot: usize| self.port_id(Port { owner: PortOwner::Outer, slot }).unwrap();
        match kind {
            Closure::Numerator => {
                sp.weld(o(1), o(2));
                sp.weld(o(4), o(3));
            }
            Closure::Denominator => {
                sp.weld(o(1), o(4));
                sp.weld(o(2), o(3));
            }
        }
        let mut base = 0u32;
        for j in 0..self.crossings {
            for slot in 0..4 {
                let old = self.port_id(Port { owner: PortOwner::Crossing(j), slot }).unwrap();
                sp.keep(old, base);
                base += 1;
            }
        }
        let (new_arcs, loops) = sp.run();
        let d = TangleDiagram {
            outer_points: 0,
            hole_points: vec![],
            crossings: self.crossings,
            arcs: new_arcs,
            free_loops: self.free_loops + loops,
        };
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Horizontal connect sum: joins self.NE–other.NW and self.SE–other.SW;
    /// the result's outer points are self.NW, other.NE, other.SE, self.SW.
    /// Holes are renumbered self's first, then other's.
    pub fn hsum(&self, other: &TangleDiagram) -> Result<TangleDiagram, DiagramError> {
        if self.outer_points != 4 || other.outer_points != 4 {
            return Err(DiagramError::Arity {
                expected: "two 4-point tangles".into(),
                got: format!("{} and {} outer points", self.outer_points, other.outer_points),
            });
        }
        let off = self.total_ports() as u32;
        let total_old = self.total_ports() + other.total_ports();
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(a, b)| (a + off, b + off)));
        let mut sp = Splice::new(total_old, &arcs);
        let oa = |slot: usize| self.port_id(Port { owner: PortOwner::Outer, slot }).unwrap();
        let ob = |slot: usize| other.port_id(Port { owner: PortOwner::Outer, slot }).unwrap() + off;
        sp.weld(oa(2), ob(1));
        sp.weld(oa(3), ob(4));
        // New outer: 1 = self.NW, 2 = other.NE, 3 = other.SE, 4 = self.SW.
        sp.keep(oa(1), 0);
        sp.keep(ob(2), 1);
        sp.keep(ob(3), 2);
        sp.keep(oa(4), 3);
        let mut base = 4u32;
        let mut new_hole_points = Vec::new();
        for (d, o) in [(self, 0u32), (other, off)] {
            for h in 1..=d.hole_points.len() {
                new_hole_points.push(d.hole_points[h - 1]);
                for slot in 1..=d.hole_points[h - 1] {
                    let old = d.port_id(Port { owner: PortOwner::Hole(h), slot }).unwrap();
                    sp.keep(old + o, base);
                    base += 1;
                }
            }
        }
        for (d, o) in [(self, 0u32), (other, off)] {
            for j in 0..d.crossings {
                for slot in 0..4 {
                    let old = d.port_id(Port { owner: PortOwner::Crossing(j), slot }).unwrap();
                    sp.keep(old + o, base);
                    base += 1;
                }
            }
        }
        let (new_arcs, loops) = sp.run();
        let d = TangleDiagram {
            outer_points: 4,
            hole_points: new_hole_points,
            crossings: self.crossings + other.crossings,
            arcs: new_arcs,
            free_loops: self.free_loops + other.free_loops + loops,
        };
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Vertical connect sum, defined by conjugating the horizontal one
    /// with quarter turns.
    pub fn vsum(&self, other: &TangleDiagram) -> Result<TangleDiagram, DiagramError> {
        Ok(self.rot().hsum(&other.rot())?.rot().rot().rot())
    }

    /// Inner horizontal connect sum of a ball tangle into the hole side
    /// of a spherical tangle. Exactly one operand must be spherical; the
    /// argument order selects which of the two inner sums is taken.
    pub fn ihsum(&self, other: &TangleDiagram) -> Result<TangleDiagram, DiagramError> {
        match (self.holes(), other.holes()) {
            (0, 1) => other.swap()?.hsum(&self.hflip())?.swap(),
            (1, 0) => other.hflip().hsum(&self.swap()?)?.swap(),
            _ => Err(DiagramError::Arity {
                expected: "one ball tangle and one spherical tangle".into(),
                got: format!("{} and {} holes", self.holes(), other.holes()),
            }),
        }
    }

    /// Inner vertical connect sum; see [`TangleDiagram::ihsum`].
    pub fn ivsum(&self, other: &TangleDiagram) -> Result<TangleDiagram, DiagramError> {
        match (self.holes(), other.holes()) {
            (0, 1) => other.swap()?.vsum(&self.vflip())?.swap(),
            (1, 0) => other.vflip().vsum(&self.swap()?)?.swap(),
            _ => Err(DiagramError::Arity {
                expected: "one ball tangle and one spherical tangle".into(),
                got: format!("{} and {} holes", self.holes(), other.holes()),
            }),
        }
    }

    /// Replaces a crossing by one of its two smoothings.
    pub fn smooth_crossing(&self, j: usize, s: Smoothing) -> Result<TangleDiagram, DiagramError> {
        if j >= self.crossings {
            return Err(DiagramError::NoSuchCrossing(j));
        }
        let mut sp = Splice::new(self.total_ports(), &self.arcs);
        let cp = |slot: usize| self.port_id(Port { owner: PortOwner::Crossing(j), slot }).unwrap();
        match s {
            Smoothing::A => {
                sp.weld(cp(0), cp(1));
                sp.weld(cp(2), cp(3));
            }
            Smoothing::B => {
                sp.weld(cp(0), cp(3));
                sp.weld(cp(1), cp(2));
            }
        }
        let boundary = self.outer_points + self.hole_points.iter().sum::<usize>();
        for id in 0..boundary {
            sp.keep(id as u32, id as u32);
        }
        let mut base = boundary as u32;
        for k in 0..self.crossings {
            if k == j {
                continue;
            }
            for slot in 0..4 {
                let old = self.port_id(Port { owner: PortOwner::Crossing(k), slot }).unwrap();
                sp.keep(old, base);
                base += 1;
            }
        }
        let (new_arcs, loops) = sp.run();
        let d = TangleDiagram {
            outer_points: self.outer_points,
            hole_points: self.hole_points.clone(),
            crossings: self.crossings - 1,
            arcs: new_arcs,
            free_loops: self.free_loops + loops,
        };
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Replaces arc `idx` by a kink: one new crossing whose removal is a
    /// single first Reidemeister move. `positive` selects the chirality
    /// (bracket factor A^{-1} versus A at the evaluation point).
    pub fn insert_kink(&self, idx: usize, positive: bool) -> Result<TangleDiagram, DiagramError> {
        let &(a, b) = self.arcs.get(idx).ok_or(DiagramError::NoSuchArc(idx))?;
        let j = self.crossings;
        let mut d = TangleDiagram {
            outer_points: self.outer_points,
            hole_points: self.hole_points.clone(),
            crossings: self.crossings + 1,
            arcs: Vec::new(),
            free_loops: self.free_loops,
        };
        let cp = |slot: usize| d.port_id(Port { owner: PortOwner::Crossing(j), slot }).unwrap();
        let mut arcs = self.arcs.clone();
        arcs.remove(idx);
        if positive {
            // loop arc on slots (0,1): the A smoothing detaches the loop
            arcs.push((a, cp(2)));
            arcs.push((cp(3), b));
            arcs.push((cp(0), cp(1)));
        } else {
            arcs.push((a, cp(0)));
            arcs.push((cp(3), b));
            arcs.push((cp(2), cp(1)));
        }
        d.arcs = arcs;
        debug_assert!(d.validate().is_ok());
        Ok(d)
    }

    /// Inserts two cancelling kinks of opposite chirality on arc `idx`:
    /// the bracket of any closure is exactly unchanged.
    pub fn insert_cancelling_pair(&self, idx: usize) -> Result<TangleDiagram, DiagramError> {
        let d = self.insert_kink(idx, true)?;
        // the freshly created arc (cp(3), b) is the last one
        let last = d.arcs.len() - 2;
        d.insert_kink(last, false)
    }
}
