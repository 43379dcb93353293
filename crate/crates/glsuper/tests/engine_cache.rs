mod common;

use common::*;
use glsuper::par::Exec;
use glsuper::super_kl::build_kl_table_with;
use glsuper::{Algebra, Engine, Interval};

#[test]
fn second_engine_reads_the_disk_cache() {
    let dir = tempfile::tempdir().unwrap();
    let g = Algebra::gl(2, 1).unwrap();
    let a = Engine::new().with_cache_dir(dir.path()).unwrap();
    let x = a.ext_verma_simple(&g, &w("0,0|0"), &w("0,3|3"), 3).unwrap();
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(files >= 1);
    let b = Engine::new().with_cache_dir(dir.path()).unwrap();
    assert_eq!(b.ext_verma_simple(&g, &w("0,0|0"), &w("0,3|3"), 3).unwrap(), x);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), files);
    assert!(a.take_warnings().is_empty() && b.take_warnings().is_empty());
}

#[test]
fn corrupt_cache_entries_are_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let g = Algebra::gl(2, 1).unwrap();
    let a = Engine::new().with_cache_dir(dir.path()).unwrap();
    let x = a.ext_verma_simple(&g, &w("1,0|1"), &w("4,0|4"), 3).unwrap();
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "{ not json").unwrap();
    }
    let b = Engine::new().with_cache_dir(dir.path()).unwrap();
    assert_eq!(b.ext_verma_simple(&g, &w("1,0|1"), &w("4,0|4"), 3).unwrap(), x);
    assert_eq!(x, 1);
}

#[test]
fn sequential_and_parallel_tables_agree() {
    let g = Algebra::gl(2, 2).unwrap();
    let i = Interval { a: -1, b: 3 };
    let s = build_kl_table_with(&g, &w("1,0|0,1"), &i, 10_000, Exec::Sequential).unwrap();
    let p = build_kl_table_with(&g, &w("1,0|0,1"), &i, 10_000, Exec::Parallel).unwrap();
    assert_eq!(s.to_json().unwrap(), p.to_json().unwrap());
    let e1 = Engine::new().with_exec(Exec::Sequential);
    let e2 = Engine::new().with_exec(Exec::Parallel);
    let ws = [w("1,0|0,1"), w("0,1|0,1"), w("1,0|1,0"), w("0,1|1,0")];
    assert_eq!(e1.ext1_quiver(&g, &ws).unwrap(), e2.ext1_quiver(&g, &ws).unwrap());
}
