mod common;

use common::*;
use glsuper::interval::length_fn;
use glsuper::super_kl::build_kl_table;
use glsuper::weights::bruhat_leq;
use glsuper::{Algebra, Engine, Interval};

#[test]
fn gl21_lengths() {
    assert_eq!(length_fn(&w("1,0|1"), &w("0,1|1")).unwrap(), 1);
    assert_eq!(length_fn(&w("0,1|1"), &w("0,0|0")).unwrap(), 1);
    assert_eq!(length_fn(&w("0,0|0"), &w("0,-1|-1")).unwrap(), 1);
    assert_eq!(length_fn(&w("1,0|1"), &w("0,-1|-1")).unwrap(), 3);
}

#[test]
fn gl12_covering_labels() {
    // (hi, lo, length) along the gl(1|2) covering chain
    let edges = [
        ("1|1,0", "0|0,0", 1),
        ("1|0,1", "1|1,0", 1),
        ("2|2,0", "1|1,0", 1),
        ("2|0,2", "2|2,0", 3),
        ("2|0,2", "1|0,1", 3),
        ("3|3,0", "2|2,0", 1),
        ("3|0,3", "3|3,0", 5),
        ("3|0,3", "2|0,2", 3),
        ("4|4,0", "3|3,0", 1),
        ("4|0,4", "4|4,0", 7),
    ];
    for (hi, lo, l) in edges {
        assert!(bruhat_leq(&w(lo), &w(hi)).unwrap(), "{lo} <= {hi}");
        assert_eq!(length_fn(&w(hi), &w(lo)).unwrap(), l, "{hi} over {lo}");
    }
}

#[test]
fn closed_forms_up_to_six() {
    let g = Algebra::gl(2, 1).unwrap();
    let t = build_kl_table(&g, &w("0,0|0"), &Interval { a: -2, b: 7 }).unwrap();
    for lam in closed_form_sources() {
        let mut hits = 0;
        for nu in t.weights() {
            let expect = closed_form_p(&lam, nu).unwrap();
            assert_eq!(t.p(&lam, nu).unwrap(), expect, "p_{{{lam},{nu}}}");
            hits += !expect.is_zero() as usize;
        }
        // every expansion reaches k = 6 inside this window
        assert!(hits >= 6, "{lam}: {hits}");
    }
}

#[test]
fn principal_quiver_is_the_hasse_diagram_plus_one_edge() {
    let e = Engine::new();
    let g = Algebra::gl(2, 1).unwrap();
    let ws: Vec<_> =
        ["0,-2|-2", "0,-1|-1", "0,0|0", "1,0|1", "2,0|2", "-1,0|-1", "0,1|1", "0,2|2"].iter().map(|s| w(s)).collect();
    let qv = e.ext1_quiver(&g, &ws).unwrap();
    let mut got: Vec<(String, String)> = qv
        .edges
        .iter()
        .map(|&(a, b, d)| {
            assert_eq!(d, 1);
            let (x, y) = (ws[a].to_string(), ws[b].to_string());
            if x < y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();
    got.sort();
    let hasse = [
        ("0,-2|-2", "0,-1|-1"),
        ("-1,0|-1", "0,-1|-1"),
        ("0,-1|-1", "0,0|0"),
        ("0,0|0", "0,1|1"),
        ("0,1|1", "1,0|1"),
        ("0,1|1", "0,2|2"),
        ("1,0|1", "2,0|2"),
        ("0,2|2", "2,0|2"),
        // the extra edge
        ("1,0|1", "0,-1|-1"),
    ];
    let mut expect: Vec<(String, String)> = hasse
        .iter()
        .map(|(a, b)| {
            let (x, y) = (w(a).to_string(), w(b).to_string());
            if x < y {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect();
    expect.sort();
    assert_eq!(got, expect);
    assert_eq!(e.ext1_quiver(&g, &ws[..1]).unwrap().edges, vec![]);
}
