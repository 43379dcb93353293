//! Fixtures reproduced by `glsuper selftest`.

use glsuper::interval::length_fn;
use glsuper::super_kl::{build_kl_table, CONVENTION};
use glsuper::{Algebra, Engine, Interval, LaurentPoly, Weight};
use serde_json::json;
use std::process::ExitCode;

type Check = glsuper::Result<()>;

fn w(s: &str) -> Weight {
    s.parse().expect("fixture weights parse")
}

fn expect<T: PartialEq + std::fmt::Display>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(glsuper::Error::SelfTest(format!("{what} = {got}, expected {want}")))
    }
}

fn lengths() -> Check {
    for (hi, lo, l) in [
        ("1,0|1", "0,1|1", 1),
        ("0,1|1", "0,0|0", 1),
        ("0,0|0", "0,-1|-1", 1),
        ("1,0|1", "0,-1|-1", 3),
        ("1|1,0", "0|0,0", 1),
        ("1|0,1", "1|1,0", 1),
        ("2|0,2", "2|2,0", 3),
        ("2|0,2", "1|0,1", 3),
        ("3|0,3", "3|3,0", 5),
        ("4|0,4", "4|4,0", 7),
    ] {
        expect(&format!("length({hi}, {lo})"), length_fn(&w(hi), &w(lo))?, l)?;
    }
    Ok(())
}

fn closed_forms(e: &Engine) -> Check {
    let g = Algebra::gl(2, 1)?;
    for k in 0..=6i64 {
        let q = |d: i64| LaurentPoly::monomial(d as i32, 1);
        if k >= 1 {
            let nu = Weight::new(vec![k, 0], vec![k]);
            expect(&format!("p((1,0|1), {nu})"), e.p_poly(&g, &w("1,0|1"), &nu)?.value, q(k - 1))?;
        }
        let nu = Weight::new(vec![0, k], vec![k]);
        expect(&format!("p((0,0|0), {nu})"), e.p_poly(&g, &w("0,0|0"), &nu)?.value, q(k))?;
    }
    Ok(())
}

/// gl(1|1): `M(a|a)` has the single submodule `L(a-1|a-1)` in radical
/// degree one, so `d` is `1 + q` on neighbours and typical Vermas are simple.
fn gl11() -> Check {
    let g = Algebra::gl(1, 1)?;
    let t = build_kl_table(&g, &w("0|0"), &Interval { a: -3, b: 2 })?;
    for mu in t.weights() {
        for lam in t.weights() {
            let want = if mu == lam {
                LaurentPoly::one()
            } else if lam.left[0] == mu.left[0] + 1 {
                LaurentPoly::monomial(1, 1)
            } else {
                LaurentPoly::zero()
            };
            expect(&format!("d({mu}, {lam})"), t.d(mu, lam)?, want)?;
            // p is the alternating inverse: q^(lam - mu) above the diagonal
            let k = lam.left[0] - mu.left[0];
            let want = if k >= 0 { LaurentPoly::monomial(k as i32, 1) } else { LaurentPoly::zero() };
            expect(&format!("p({mu}, {lam})"), t.p(mu, lam)?, want)?;
        }
    }
    let t = build_kl_table(&g, &w("2|5"), &Interval { a: 1, b: 6 })?;
    expect("typical gl(1|1) block size", t.len(), 1)
}

pub fn run(e: &Engine, as_json: bool) -> ExitCode {
    let checks: Vec<(&str, Check)> = vec![
        ("conventions", e.self_test()),
        ("lengths", lengths()),
        ("closed forms", closed_forms(e)),
        ("gl(1|1) Verma structure", gl11()),
    ];
    let failed = checks.iter().filter(|c| c.1.is_err()).count();
    if as_json {
        let rows: Vec<_> = checks
            .iter()
            .map(|(n, r)| json!({ "check": n, "ok": r.is_ok(), "error": r.as_ref().err().map(|e| e.to_string()) }))
            .collect();
        crate::emit(&json!({ "command": "selftest", "convention": CONVENTION, "checks": rows }).to_string());
    } else {
        for (n, r) in &checks {
            match r {
                Ok(()) => crate::emit(&format!("ok    {n}")),
                Err(e) => crate::emit(&format!("FAIL  {n}: {e}")),
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
