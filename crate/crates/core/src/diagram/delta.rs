//! The two 3-crossing gadgets of a delta move on three strands, for
//! insertion into a 6-point hole, plus the five crossingless basis
//! matchings of six boundary points.
//!
//! Both gadgets connect hole points 1–4, 3–6 and 5–2 through a triangle
//! of pairwise crossings; they differ by the middle strand sitting on
//! the other side of the remaining crossing. Expanding the eight states
//! of either gadget inside any host diagram gives
//!
//! ```text
//! <G1 host> - <G2 host> = 4·A^{-1}·(<C1 host> - <C2 host>)
//! ```
//!
//! where C1 pairs (1,2)(3,4)(5,6) and C2 pairs (1,6)(2,3)(4,5).

use super::{DiagramError, Port, PortOwner, TangleDiagram};

fn cross(j: usize, slot: usize) -> Port {
    Port { owner: PortOwner::Crossing(j), slot }
}

fn outer(slot: usize) -> Port {
    Port { owner: PortOwner::Outer, slot }
}

/// The pair of delta gadgets as 6-point tangles with 3 crossings each.
pub fn delta_gadgets() -> (TangleDiagram, TangleDiagram) {
    // Strand a runs 1-4, strand b runs 3-6, strand c runs 5-2. Crossing 0
    // is a/c, crossing 1 is a/b, crossing 2 is b/c; crossing 2 is common
    // to both variants.
    let g1 = TangleDiagram::new(
        6,
        vec![],
        3,
        vec![
            (outer(1), cross(0, 1)),
            (cross(0, 3), cross(1, 2)),
            (cross(1, 0), outer(4)),
            (outer(3), cross(1, 3)),
            (cross(1, 1), cross(2, 0)),
            (cross(2, 2), outer(6)),
            (outer(5), cross(2, 1)),
            (cross(2, 3), cross(0, 0)),
            (cross(0, 2), outer(2)),
        ],
        0,
    )
    .expect("gadget one is well formed");
    let g2 = TangleDiagram::new(
        6,
        vec![],
        3,
        vec![
            (outer(1), cross(1, 2)),
            (cross(1, 0), cross(0, 1)),
            (cross(0, 3), outer(4)),
            (outer(5), cross(0, 0)),
            (cross(0, 2), cross(2, 1)),
            (cross(2, 3), outer(2)),
            (outer(3), cross(2, 0)),
            (cross(2, 2), cross(1, 3)),
            (cross(1, 1), outer(6)),
        ],
        0,
    )
    .expect("gadget two is well formed");
    (g1, g2)
}

/// One of the five crossingless perfect matchings of six boundary
/// points, as a 6-point tangle. Index 1 pairs (1,2)(3,4)(5,6) and
/// index 2 pairs (1,6)(2,3)(4,5); these two are the extremal states of
/// the delta gadgets.
pub fn basis_matching(index: usize) -> Option<TangleDiagram> {
    let pairs: &[(usize, usize)] = match index {
        1 => &[(1, 2), (3, 4), (5, 6)],
        2 => &[(1, 6), (2, 3), (4, 5)],
        3 => &[(1, 2), (3, 6), (4, 5)],
        4 => &[(1, 6), (2, 5), (3, 4)],
        5 => &[(1, 4), (2, 3), (5, 6)],
        _ => return None,
    };
    let arcs = pairs.iter().map(|&(a, b)| (outer(a), outer(b))).collect();
    Some(TangleDiagram::new(6, vec![], 0, arcs, 0).expect("matching is well formed"))
}

/// How a fresh 6-point hole is spliced into an existing arc. Both
/// wirings are planar insertions, so templates cut from planar diagrams
/// stay planar.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DeltaSite {
    /// The arc runs through one chord of the hexagon; a small circle
    /// completes the other two chords.
    StrandWithCircle,
    /// The arc detours through all three chords of the hexagon.
    SelfDetour,
}

/// Replaces arc `idx` by a detour through a new 6-point hole, appended
/// after the existing holes. Filling that hole with the delta gadgets
/// yields a delta-move pair.
pub fn insert_delta_site(
    d: &TangleDiagram,
    idx: usize,
    site: DeltaSite,
) -> Result<TangleDiagram, DiagramError> {
    let mut arcs = d.arcs();
    if idx >= arcs.len() {
        return Err(DiagramError::NoSuchArc(idx));
    }
    let (u, v) = arcs.remove(idx);
    let hole = d.holes() + 1;
    let hp = |slot: usize| Port { owner: PortOwner::Hole(hole), slot };
    match site {
        DeltaSite::StrandWithCircle => {
            arcs.push((u, hp(1)));
            arcs.push((hp(4), v));
            arcs.push((hp(2), hp(3)));
            arcs.push((hp(5), hp(6)));
        }
        DeltaSite::SelfDetour => {
            arcs.push((u, hp(2)));
            arcs.push((hp(1), v));
            arcs.push((hp(3), hp(4)));
            arcs.push((hp(5), hp(6)));
        }
    }
    let mut hole_points: Vec<usize> = (1..=d.holes()).map(|h| d.hole_points(h)).collect();
    hole_points.push(6);
    TangleDiagram::new(d.outer_points(), hole_points, d.crossings(), arcs, d.free_loops())
}

/// Fills the unique 6-point hole of a template with the two delta
/// gadgets, returning the two resulting diagrams.
pub fn delta_pair(template: &TangleDiagram) -> Result<(TangleDiagram, TangleDiagram), DiagramError> {
    let mut six = None;
    for h in 1..=template.holes() {
        if template.hole_points(h) == 6 {
            if six.is_some() {
                return Err(DiagramError::Arity {
                    expected: "exactly one 6-point hole".into(),
                    got: "several 6-point holes".into(),
                });
            }
            six = Some(h);
        }
    }
    let hole = six.ok_or(DiagramError::Arity {
        expected: "exactly one 6-point hole".into(),
        got: "none".into(),
    })?;
    let (g1, g2) = delta_gadgets();
    Ok((template.fill_hole(hole, &g1)?, template.fill_hole(hole, &g2)?))
}
