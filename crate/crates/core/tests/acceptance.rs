//! Acceptance suite: one test per criterion, each printing a pass line
//! with its elapsed time (visible with `--nocapture`).
//!
//! All comparisons are exact; randomized criteria draw from seeded
//! generators (override with PBTANGLE_TEST_SEED).

use std::time::Instant;

use pbtangle::algebra::{
    compose_fill, det_mod4_class, hsum as pm_hsum, j_formula, krebes_check, vsum as pm_vsum,
    SphericalMatrix,
};
use pbtangle::bracket::{bracket, bracket_cyc, skein_check, State};
use pbtangle::coxeter::{act, act_word, enumerate_group, GroupWord};
use pbtangle::diagram::{
    delta_pair, elaborate, insert_delta_site, parse_expr, parse_raw, Closure, DeltaSite, Smoothing,
    TangleDiagram, TangleExpr,
};
use pbtangle::invariant::{compute_f, PMatrix};
use pbtangle::random::ExprGen;
use pbtangle::synthesis::{synthesize, verify_recipe};
use rand::Rng;

fn seed() -> u64 {
    std::env::var("PBTANGLE_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0xACCE97)
}

fn report(criterion: &str, started: Instant) {
    println!("PASS {criterion} ({} ms)", started.elapsed().as_millis());
}

fn f_of(text: &str) -> PMatrix {
    compute_f(&elaborate(&parse_expr(text).unwrap()).unwrap()).unwrap()
}

fn col(p: i64, q: i64) -> PMatrix {
    PMatrix::from_pair(p, q)
}

#[test]
fn criterion_01_calibration_fixtures() {
    let t = Instant::now();
    assert_eq!(f_of("inf"), col(1, 0));
    assert_eq!(f_of("zero"), col(0, 1));
    assert_eq!(f_of("htwist(1)"), col(1, 1));
    assert_eq!(f_of("mirror(htwist(1))"), col(1, -1));
    for k in -3..=3 {
        assert_eq!(f_of(&format!("htwist({k})")), col(k, 1), "htwist({k})");
        assert_eq!(f_of(&format!("vtwist({k})")), col(1, k), "vtwist({k})");
    }
    assert_eq!(f_of("hsum(htwist(1),htwist(1))"), col(2, 1));
    assert_eq!(f_of("hsum(vtwist(3),inf)"), col(3, 0));
    assert_eq!(f_of("hsum(inf,inf)"), col(0, 0));
    assert!(t.elapsed().as_secs() < 1);
    report("criterion 1: calibration fixtures", t);
}

#[test]
fn criterion_02_spherical_fixtures() {
    let t = Instant::now();
    let m = |r0: [i64; 2], r1: [i64; 2]| PMatrix::from_rows(r0.to_vec(), r1.to_vec());
    assert_eq!(f_of("I"), m([1, 0], [0, 1]));
    let b = "vsum(htwist(1),I)";
    assert_eq!(f_of(b), m([1, 0], [1, 1]));
    assert_eq!(f_of(&format!("compose({b},{b})")), m([1, 0], [2, 1]));
    let e = "hsum(inf,vsum(htwist(1),I))";
    assert_eq!(f_of(e), m([1, 1], [0, 0]));
    let be = format!("compose({b},{e})");
    assert_eq!(f_of(&be), m([1, 1], [1, 1]));
    assert_eq!(f_of(&format!("r1({be})")), m([1, -1], [1, -1]));
    assert!(t.elapsed().as_secs() < 1);
    report("criterion 2: spherical fixtures", t);
}

#[test]
fn criterion_03_worked_five_hole_composition() {
    let t = Instant::now();
    let row1: Vec<i64> = vec![
        0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, -1, 0, -1, 0, 0, 1, 0, 0, -1, 0, -1, 0, 0, 0, 0, 0, 0,
        0, 0, 0, 0,
    ];
    let row2: Vec<i64> = vec![
        0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, -1,
        0, -1, 0, 0,
    ];
    let head = PMatrix::from_rows(row1, row2);
    let parts = vec![
        col(-4, 1),
        col(-4, 1),
        col(2, 1),
        col(-4, 1),
        PMatrix::from_rows(vec![1, 0], vec![0, 1]),
    ];
    let result = compose_fill(&head, &parts).unwrap();
    assert_eq!(result, PMatrix::from_rows(vec![-32, 16], vec![-16, -10]));
    let s = SphericalMatrix::from_pmatrix(result).unwrap();
    assert_eq!(s.det(), 576);
    assert_eq!(576, 24 * 24);
    assert!(t.elapsed().as_secs() < 1);
    report("criterion 3: worked five-hole composition", t);
}

#[test]
fn criterion_04_oracle_equivalence_of_composition() {
    let t = Instant::now();
    let mut gen = ExprGen::new(seed());
    let mut checked = 0usize;
    while checked < 500 {
        let mode = gen.rng().gen_range(0..3);
        match mode {
            0 => {
                // hole-filling against the matrix route
                let n = gen.rng().gen_range(1..=3usize);
                let head = gen.punctured(n, 6);
                let mut args = Vec::new();
                let mut budget_left: u64 = 8;
                let mut arg_holes = 0usize;
                for _ in 0..n {
                    let k = if arg_holes < 2 && gen.rng().gen_bool(0.3) { 1 } else { 0 };
                    arg_holes += k;
                    let a = gen.punctured(k, budget_left.min(3));
                    budget_left = budget_left.saturating_sub(a.crossing_count());
                    args.push(a);
                }
                let total = head.crossing_count()
                    + args.iter().map(|a| a.crossing_count()).sum::<u64>();
                assert!(total <= 14);
                if n + arg_holes > 3 {
                    continue;
                }
                let head_d = elaborate(&head).unwrap();
                let arg_d: Vec<TangleDiagram> =
                    args.iter().map(|a| elaborate(a).unwrap()).collect();
                let direct = compute_f(&head_d.fill(&arg_d).unwrap()).unwrap();
                let parts: Vec<PMatrix> =
                    arg_d.iter().map(|d| compute_f(d).unwrap()).collect();
                let formula = compose_fill(&compute_f(&head_d).unwrap(), &parts).unwrap();
                assert_eq!(direct, formula, "fill {head} with {args:?}");
            }
            _ => {
                let ha = gen.rng().gen_range(0..=1usize);
                let hb = gen.rng().gen_range(0..=(2 - ha).min(1));
                let a = gen.punctured(ha, 6);
                let b = gen.punctured(hb, 6);
                assert!(a.crossing_count() + b.crossing_count() <= 14);
                let da = elaborate(&a).unwrap();
                let db = elaborate(&b).unwrap();
                let fa = compute_f(&da).unwrap();
                let fb = compute_f(&db).unwrap();
                if mode == 1 {
                    let direct = compute_f(&da.hsum(&db).unwrap()).unwrap();
                    assert_eq!(direct, pm_hsum(&fa, &fb), "hsum({a},{b})");
                } else {
                    let direct = compute_f(&da.vsum(&db).unwrap()).unwrap();
                    assert_eq!(direct, pm_vsum(&fa, &fb), "vsum({a},{b})");
                }
            }
        }
        checked += 1;
    }
    assert!(t.elapsed().as_secs() < 60);
    report("criterion 4: oracle equivalence over 500 compositions", t);
}

#[test]
fn criterion_05_bracket_properties() {
    let t = Instant::now();
    let mut gen = ExprGen::new(seed() ^ 10);

    // skein relation at every crossing of generated closed diagrams
    let mut diagrams = Vec::new();
    for _ in 0..30 {
        let e = gen.ball(8);
        let d = elaborate(&e).unwrap();
        let closure = if gen.rng().gen_bool(0.5) { Closure::Numerator } else { Closure::Denominator };
        diagrams.push(d.close(closure).unwrap());
    }
    for d in &diagrams {
        for j in 0..d.crossings() {
            assert!(skein_check(d, j).unwrap().pass());
        }
    }

    // parity: exhaustively over all state pairs for c <= 10
    for e in [
        "htwist(5)",
        "hsum(htwist(3),vtwist(3))",
        "hsum(vtwist(4),htwist(4))",
        "compose(vsum(htwist(2),I),htwist(3))",
        "hsum(htwist(5),vtwist(5))",
        "compose(vsum(htwist(2),I),hsum(htwist(4),vtwist(4)))",
    ] {
        let d = elaborate(&parse_expr(e).unwrap()).unwrap().close(Closure::Numerator).unwrap();
        let c = d.crossings();
        assert!(c <= 10);
        let loops: Vec<usize> = (0..1u64 << c)
            .map(|mask| {
                pbtangle::bracket::loop_count(&d, &State::from_mask(mask, c)).unwrap()
            })
            .collect();
        for s1 in 0..1u64 << c {
            for s2 in 0..1u64 << c {
                let even_flips = (s1 ^ s2).count_ones() % 2 == 0;
                let same_parity = loops[s1 as usize] % 2 == loops[s2 as usize] % 2;
                assert_eq!(even_flips, same_parity);
            }
        }
    }

    // two cancelling crossings on any arc leave the bracket unchanged
    for d in diagrams.iter().take(10) {
        let base = bracket_cyc(d).unwrap();
        for idx in 0..d.arc_count() {
            assert_eq!(bracket_cyc(&d.insert_cancelling_pair(idx).unwrap()).unwrap(), base);
        }
    }

    // a kink on any arc leaves the matrix invariant unchanged
    for _ in 0..10 {
        let e = gen.spherical(5);
        let d = elaborate(&e).unwrap();
        let base = compute_f(&d).unwrap();
        for idx in 0..d.arc_count() {
            for positive in [true, false] {
                assert_eq!(compute_f(&d.insert_kink(idx, positive).unwrap()).unwrap(), base);
            }
        }
    }
    assert!(t.elapsed().as_secs() < 60);
    report("criterion 5: bracket properties (skein, parity, kink and pair insertion)", t);
}

#[test]
fn criterion_06_krebes_divisibility() {
    let t = Instant::now();
    let mut gen = ExprGen::new(seed() ^ 20);
    // pool of embedded-tangle classes with small recipes, biased toward
    // nontrivial gcds
    let pool: &[(i64, i64)] = &[
        (2, 4),
        (3, 0),
        (0, 2),
        (2, 2),
        (3, 3),
        (1, 2),
        (2, 1),
        (4, 2),
        (3, 1),
        (0, 0),
        (2, 0),
        (4, 4),
    ];
    for case in 0..200 {
        let k = gen.rng().gen_range(1..=3usize);
        let mut tangles = Vec::new();
        let mut link: Option<TangleExpr> = None;
        for _ in 0..k {
            let (p, q) = pool[gen.rng().gen_range(0..pool.len())];
            tangles.push((p, q));
            let mut piece = synthesize(p, q).unwrap();
            // wrapping a piece mirrors or turns it; the gcd of its class
            // is unchanged
            if gen.rng().gen_bool(0.3) {
                piece = TangleExpr::Mirror(Box::new(piece));
            }
            link = Some(match link {
                None => piece,
                Some(acc) => {
                    if gen.rng().gen_bool(0.5) {
                        TangleExpr::HSum(Box::new(acc), Box::new(piece))
                    } else {
                        TangleExpr::VSum(Box::new(acc), Box::new(piece))
                    }
                }
            });
        }
        let mut link = link.unwrap();
        if gen.rng().gen_bool(0.5) {
            let wrapper = gen.spherical(3);
            link = TangleExpr::Compose(Box::new(wrapper), Box::new(link));
        }
        if link.crossing_count() > 17 {
            continue;
        }
        let closure = if gen.rng().gen_bool(0.5) { Closure::Numerator } else { Closure::Denominator };
        let closed = elaborate(&link).unwrap().close(closure).unwrap();
        let magnitude = bracket(&closed).unwrap().magnitude;
        assert!(
            krebes_check(&tangles, magnitude),
            "case {case}: tangles {tangles:?} in {link}, |bracket| = {}",
            magnitude.abs()
        );
    }
    assert!(t.elapsed().as_secs() < 60);
    report("criterion 6: Krebes divisibility over 200 links", t);
}

#[test]
fn criterion_07_mod4_obstruction() {
    let t = Instant::now();
    let mut gen = ExprGen::new(seed() ^ 30);
    for _ in 0..500 {
        let e = gen.spherical(9);
        let f = compute_f(&elaborate(&e).unwrap()).unwrap();
        let s = SphericalMatrix::from_pmatrix(f).unwrap();
        let (class, obstructed) = det_mod4_class(&s);
        assert!(class == 0 || class == 1, "{e} has det {} mod 4 = {class}", s.det());
        assert!(!obstructed);
    }
    let probe = SphericalMatrix::new(1, 0, 0, -1);
    assert_eq!(det_mod4_class(&probe), (3, true));

    // spherical diagrams with a hooked closed component have all
    // invariant entries even
    for d in hooked_fixtures() {
        let f = compute_f(&d).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(f.get(r, c) % 2, 0, "entry ({r},{c}) of {f} is odd");
            }
        }
    }
    assert!(t.elapsed().as_secs() < 60);
    report("criterion 7: mod-4 determinant obstruction and even-entry fixtures", t);
}

/// Hand-written raw spherical diagrams, each containing a closed
/// component hooked through the strands, plus their quarter-turn images
/// (24 fixtures in total).
fn hooked_fixtures() -> Vec<TangleDiagram> {
    let base: &[&str] = &[
        // a circle clasping the NW strand: under at x0, over at x1
        "outer: 4\nholes: 4\ncrossings: 2\n\
         arc: hole1.1 x0.0\narc: x0.2 x1.1\narc: x1.3 outer.1\n\
         arc: x0.3 x1.0\narc: x0.1 x1.2\n\
         arc: hole1.2 outer.2\narc: hole1.3 outer.3\narc: hole1.4 outer.4\n",
        // the mirrored clasp (both crossings flipped)
        "outer: 4\nholes: 4\ncrossings: 2\n\
         arc: hole1.1 x0.1\narc: x0.3 x1.2\narc: x1.0 outer.1\n\
         arc: x0.0 x1.1\narc: x0.2 x1.3\n\
         arc: hole1.2 outer.2\narc: hole1.3 outer.3\narc: hole1.4 outer.4\n",
        // a circle coiled twice around the NW strand
        "outer: 4\nholes: 4\ncrossings: 4\n\
         arc: hole1.1 x0.0\narc: x0.2 x1.1\narc: x1.3 x2.0\narc: x2.2 x3.1\narc: x3.3 outer.1\n\
         arc: x0.3 x1.0\narc: x1.2 x2.1\narc: x2.3 x3.0\narc: x3.2 x0.1\n\
         arc: hole1.2 outer.2\narc: hole1.3 outer.3\narc: hole1.4 outer.4\n",
        // a ring around the hole, crossing all four strands
        "outer: 4\nholes: 4\ncrossings: 4\n\
         arc: hole1.1 x0.0\narc: x0.2 outer.1\n\
         arc: hole1.2 x1.1\narc: x1.3 outer.2\n\
         arc: hole1.3 x2.0\narc: x2.2 outer.3\n\
         arc: hole1.4 x3.1\narc: x3.3 outer.4\n\
         arc: x0.1 x1.0\narc: x1.2 x2.3\narc: x2.1 x3.0\narc: x3.2 x0.3\n",
        // a clasp whose circle carries an extra kink
        "outer: 4\nholes: 4\ncrossings: 3\n\
         arc: hole1.1 x0.0\narc: x0.2 x1.1\narc: x1.3 outer.1\n\
         arc: x0.3 x2.0\narc: x2.3 x1.0\narc: x2.2 x2.1\narc: x0.1 x1.2\n\
         arc: hole1.2 outer.2\narc: hole1.3 outer.3\narc: hole1.4 outer.4\n",
        // two circles clasping the NW and SE strands
        "outer: 4\nholes: 4\ncrossings: 4\n\
         arc: hole1.1 x0.0\narc: x0.2 x1.1\narc: x1.3 outer.1\n\
         arc: x0.3 x1.0\narc: x0.1 x1.2\n\
         arc: hole1.3 x2.0\narc: x2.2 x3.1\narc: x3.3 outer.3\n\
         arc: x2.3 x3.0\narc: x2.1 x3.2\n\
         arc: hole1.2 outer.2\narc: hole1.4 outer.4\n",
    ];
    let mut out = Vec::new();
    for text in base {
        let d = parse_raw(text).expect("fixture parses");
        let mut img = d.clone();
        for _ in 0..4 {
            out.push(img.clone());
            img = img.rot();
        }
    }
    out
}

#[test]
fn criterion_08_synthesis_round_trip() {
    let t = Instant::now();
    let mut cases = 0;
    for p in -12..=12i64 {
        for q in -12..=12i64 {
            let recipe = synthesize(p, q).unwrap();
            assert!(
                verify_recipe(&recipe, p, q).unwrap(),
                "recipe {recipe} does not realize [{p};{q}]"
            );
            cases += 1;
        }
    }
    assert_eq!(cases, 625);
    assert!(t.elapsed().as_secs() < 30);
    report("criterion 8: synthesis round-trip over 625 targets", t);
}

#[test]
fn criterion_09_twist_box_determinants() {
    let t = Instant::now();
    let mut gen = ExprGen::new(seed() ^ 40);
    for _ in 0..1000 {
        let p1 = gen.rng().gen_range(-20i64..=20);
        let p2 = gen.rng().gen_range(-20i64..=20);
        let p3 = gen.rng().gen_range(-20i64..=20);
        let p4 = gen.rng().gen_range(-20i64..=20);
        let j = j_formula(p1, p2, p3, p4);
        let expected = p1 * p4 - p2 * p3;
        assert_eq!(j.det(), expected * expected);
    }
    assert_eq!(j_formula(-4, -4, 2, -4).det(), 576);
    assert!(t.elapsed().as_secs() < 1);
    report("criterion 9: twist-box determinant formula over 1000 tuples", t);
}

#[test]
fn criterion_10_coxeter_group() {
    let t = Instant::now();
    let (elements, table) = enumerate_group();
    assert_eq!(elements.len(), 16);
    assert_eq!(table.len(), 16);

    let mut gen = ExprGen::new(seed() ^ 50);
    let relations = ["xx", "yy", "zz", "xyxyyxyx", "xzxz", "yzyz", "xyxyxyxy"];
    for _ in 0..50 {
        let m = SphericalMatrix::new(
            gen.rng().gen_range(-6..=6),
            gen.rng().gen_range(-6..=6),
            gen.rng().gen_range(-6..=6),
            gen.rng().gen_range(-6..=6),
        );
        for text in relations {
            let w = GroupWord::parse(text).unwrap();
            assert_eq!(act_word(&w, &m), m, "{text} must act as the identity");
        }
        // the braid relation as an equality of two actions
        let lhs = act_word(&GroupWord::parse("xyxy").unwrap(), &m);
        let rhs = act_word(&GroupWord::parse("yxyx").unwrap(), &m);
        assert_eq!(lhs, rhs);
    }

    let probe = SphericalMatrix::new(1, 2, 3, 5);
    let mut images: Vec<String> = elements.iter().map(|g| act(g, &probe).to_string()).collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 16, "the probe separates all sixteen elements");
    assert!(t.elapsed().as_secs() < 1);
    report("criterion 10: order-16 group of elementary operations", t);
}

#[test]
fn criterion_11_delta_congruence() {
    let t = Instant::now();
    let mut gen = ExprGen::new(seed() ^ 60);
    let mut templates = Vec::new();
    while templates.len() < 50 {
        let e = gen.spherical(6);
        let d = elaborate(&e).unwrap();
        if d.arc_count() == 0 {
            continue;
        }
        let idx = gen.rng().gen_range(0..d.arc_count());
        let site = if templates.len() % 2 == 0 { DeltaSite::StrandWithCircle } else { DeltaSite::SelfDetour };
        templates.push(insert_delta_site(&d, idx, site).unwrap());
    }
    for (k, template) in templates.iter().enumerate() {
        let (d1, d2) = delta_pair(template).unwrap();
        let f1 = compute_f(&d1).unwrap();
        let f2 = compute_f(&d2).unwrap();
        let mut plus = true;
        let mut minus = true;
        for r in 0..2 {
            for c in 0..2 {
                let (a, b) = (f1.get(r, c), f2.get(r, c));
                if (a - b).rem_euclid(4) != 0 {
                    plus = false;
                }
                if (a + b).rem_euclid(4) != 0 {
                    minus = false;
                }
            }
        }
        assert!(
            plus || minus,
            "template {k}: {f1} and {f2} are not congruent mod 4 under either sign"
        );
    }
    assert!(t.elapsed().as_secs() < 60);
    report("criterion 11: delta-move congruence over 50 spherical templates", t);
}

#[test]
fn delta_pair_brackets_differ_by_the_stated_multiple() {
    // companion check to criterion 11: the exact ring identity behind
    // the congruence, on closed templates
    let t = Instant::now();
    let mut gen = ExprGen::new(seed() ^ 70);
    for _ in 0..20 {
        let e = gen.ball(6);
        let closed = elaborate(&e).unwrap().close(Closure::Numerator).unwrap();
        if closed.arc_count() == 0 {
            continue;
        }
        let idx = gen.rng().gen_range(0..closed.arc_count());
        for site in [DeltaSite::StrandWithCircle, DeltaSite::SelfDetour] {
            let template = insert_delta_site(&closed, idx, site).unwrap();
            let (d1, d2) = delta_pair(&template).unwrap();
            let lhs = bracket_cyc(&d1).unwrap().sub(&bracket_cyc(&d2).unwrap());
            let c1 = template
                .fill_hole(template.holes(), &pbtangle::diagram::basis_matching(1).unwrap())
                .unwrap();
            let c2 = template
                .fill_hole(template.holes(), &pbtangle::diagram::basis_matching(2).unwrap())
                .unwrap();
            let rhs = pbtangle::cyclotomic::CycInt::unit_power(-1)
                .mul(&pbtangle::cyclotomic::CycInt::from_int(4))
                .mul(&bracket_cyc(&c1).unwrap().sub(&bracket_cyc(&c2).unwrap()));
            assert_eq!(lhs, rhs);
        }
    }
    report("companion: delta-pair bracket difference identity", t);
}

#[test]
fn states_are_assignments() {
    // tiny glue: State::from_mask agrees with explicit assignments
    let s = State::from_mask(0b101, 3);
    assert_eq!(s.assignment, vec![Smoothing::B, Smoothing::A, Smoothing::B]);
}
