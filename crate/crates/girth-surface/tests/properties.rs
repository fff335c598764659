use std::path::PathBuf;

use girth_map::SurfaceMap;
use girth_surface::{girth_surface, oracle_surface_girth};
use proptest::prelude::*;

const NAMES: [&str; 9] = [
    "annulus_a_g1",
    "annulus_aa_g1",
    "annulus_abAB",
    "annulus_aabb",
    "dual_graph",
    "graymap",
    "segregation_left",
    "halfdisc_shortcut",
    "one_holed_torus",
];

fn fixture(name: &str) -> SurfaceMap {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/{name}.json"));
    SurfaceMap::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn relabel(m: &SurfaceMap, seed: u64) -> SurfaceMap {
    let n = m.slot_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut x = seed | 1;
    for i in (1..n).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        perm.swap(i, (x % (i as u64 + 1)) as usize);
    }
    let mut out = m.clone();
    for s in out.countries.iter_mut().flatten() {
        *s = perm[*s];
    }
    for pair in out.gluing.iter_mut().chain(out.arcs.iter_mut()) {
        *pair = [perm[pair[0]], perm[pair[1]]];
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_exists_exactly_when_oracle_allows(k in 0..NAMES.len(), n in 0usize..5) {
        let m = fixture(NAMES[k]);
        let oracle = oracle_surface_girth(&m, 12, 20_000_000).unwrap().girth;
        let run = girth_surface(n, &m).unwrap();
        prop_assert_eq!(run.witness.is_some(), oracle.is_some_and(|g| g <= n));
        if let Some(w) = run.witness {
            prop_assert!(w.certificate.girth <= n);
            prop_assert!(w.curve.crossings <= n.max(1));
        }
    }

    #[test]
    fn slot_names_do_not_matter(k in 0..NAMES.len(), n in 0usize..4, seed in any::<u64>()) {
        let m = fixture(NAMES[k]);
        let a = girth_surface(n, &m).unwrap();
        let b = girth_surface(n, &relabel(&m, seed)).unwrap();
        prop_assert_eq!(a.witness.is_some(), b.witness.is_some());
        if let (Some(x), Some(y)) = (a.witness, b.witness) {
            prop_assert_eq!(x.certificate.girth, y.certificate.girth);
        }
    }
}
