use std::path::PathBuf;

use girth_map::{euler_char, validate, SurfaceMap};
use proptest::prelude::*;

const NAMES: [&str; 8] =
    ["annulus_abAB", "annulus_aabb", "dual_graph", "map1", "graymap", "segregation_left", "theta", "disc_piece"];

fn fixture(name: &str) -> SurfaceMap {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../fixtures/{name}.json"));
    SurfaceMap::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn relabel(m: &SurfaceMap, perm: &[usize]) -> SurfaceMap {
    let mut out = m.clone();
    for slots in &mut out.countries {
        for s in slots {
            *s = perm[*s];
        }
    }
    for pair in out.gluing.iter_mut().chain(out.arcs.iter_mut()) {
        *pair = [perm[pair[0]], perm[pair[1]]];
    }
    out
}

proptest! {
    #[test]
    fn canonical_form_ignores_slot_names(k in 0..NAMES.len(), seed in any::<u64>()) {
        let m = fixture(NAMES[k]);
        let n = m.slot_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let r = relabel(&m, &perm);
        prop_assert!(validate(&r).is_ok());
        prop_assert_eq!(r.canonical(), m.canonical());
        prop_assert_eq!(euler_char(&r).unwrap(), euler_char(&m).unwrap());
    }

    #[test]
    fn rewired_arcs_never_panic(k in 0..NAMES.len(), i in 0usize..16, j in 0usize..16, flip in any::<bool>()) {
        let mut m = fixture(NAMES[k]);
        let n = m.arcs.len();
        let (i, j) = (i % n, j % n);
        if flip {
            let t = m.arcs[i][1];
            m.arcs[i][1] = m.arcs[j][0];
            m.arcs[j][0] = t;
        } else {
            m.arcs[i].swap(0, 1);
        }
        if let Ok(d) = validate(&m) {
            prop_assert_eq!(d.chi, euler_char(&m).unwrap());
        }
        let _ = SurfaceMap::parse(&m.to_json());
    }
}
