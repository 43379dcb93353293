mod common;

use common::*;
use glsuper::atlas::*;
use glsuper::super_kl::block_weights;
use glsuper::weights::atypicality;
use glsuper::{Algebra, Engine, Interval};

#[test]
fn fingerprints_separate_blocks() {
    let e = Engine::new();
    let prints: Vec<BlockFingerprint> = (2..=5).map(|p| block_fingerprint(p, p + 2, Some(&e)).unwrap()).collect();
    let p2 = &prints[0];
    assert_eq!(p2.labels().iter().filter(|&&x| x != GENERIC_FLAT).copied().collect::<Vec<_>>(), vec![8]);
    for f in &prints[1..] {
        let labels = f.labels();
        let first = labels.iter().position(|&x| x == 6).unwrap();
        let last = labels.iter().rposition(|&x| x == 6).unwrap();
        assert_eq!(last - first - 1, (f.p - 3) as usize, "p = {}", f.p);
        assert!(labels.iter().enumerate().all(|(i, &x)| x == 4 || i == first || i == last));
    }
    for a in &prints {
        assert!(a.equivalent(a));
        for b in &prints {
            assert_eq!(a.equivalent(b), a.p == b.p);
            assert_eq!(a.equivalent(b), b.equivalent(a));
        }
    }
}

#[test]
fn flat_values_do_not_depend_on_the_window() {
    let e = Engine::new();
    for p in 2..=4 {
        for i in -2..=p + 1 {
            let x = lambda_p_i(p, i).unwrap();
            let base = flat_table(&e, &x).unwrap().value;
            assert_eq!(flat_table_at_depth(&e, &x, 8).unwrap().value, base, "{x}");
            assert_eq!(base, flat_shortcut(&x).unwrap());
            assert!(base.is_multiple_of(2) && base >= 4);
        }
    }
}

#[test]
fn path_quiver() {
    let e = Engine::new();
    for p in 2..=4 {
        assert_eq!(quiver_spot_check(&e, p, -2, p + 1).unwrap(), vec![]);
    }
}

#[test]
fn antidominant_subquotients() {
    let e = Engine::new();
    let s = Algebra::sl(3, 1).unwrap();
    for p in 2..=4 {
        let seed = lambda_p_i(p, 0).unwrap();
        let ws: Vec<_> =
            block_weights(&seed, &Interval { a: -1, b: p + 2 }).into_iter().filter(|v| atypicality(v) == 1).collect();
        let step = (ws.len() / 20).max(1);
        for v in ws.iter().step_by(step).take(20) {
            assert_eq!(verma_antidominant_count(&e, &s, v).unwrap().value, 2, "{v}");
        }
    }
    assert_eq!(verma_antidominant_count(&e, &s, &w("3,1,0|7")).unwrap().value, 1);
    assert_eq!(verma_antidominant_count(&e, &s, &w("0,1,3|7")).unwrap().value, 1);
}

#[test]
fn projective_flags_are_multiplicity_free() {
    let e = Engine::new();
    for p in 2..=4 {
        for i in -1..=p {
            let x = lambda_p_i(p, i).unwrap();
            let (pl, free) = projective_self_multiplicity(&e, &x).unwrap();
            assert!(free, "{x}");
            assert_eq!(2 * pl, flat_shortcut(&x).unwrap());
        }
    }
}
