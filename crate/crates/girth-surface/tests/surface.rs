use std::path::PathBuf;

use girth_curve::girth_word;
use girth_interface::{enumerate_d_discs, enumerate_d_half_discs, Color, DInterface};
use girth_map::{boundary_components, euler_char, locally_minimize_map, SurfaceMap};
use girth_surface::{
    construct_curve, construct_disc, continents, ec, girth_surface, oracle_surface_girth, segregating_roads,
    surface_girth, SurfaceError,
};
use girth_word::Letter;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> SurfaceMap {
    let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).unwrap();
    SurfaceMap::parse(&text).unwrap()
}

fn corpus() -> Vec<(String, SurfaceMap)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

fn iface(s: &str) -> DInterface {
    DInterface::parse(s).unwrap()
}

fn all_interfaces(genus: u8) -> Vec<DInterface> {
    enumerate_d_discs(genus)
        .map(|d| d.interface().clone())
        .chain(enumerate_d_half_discs(genus).map(|h| h.interface().clone()))
        .collect()
}

#[test]
fn agrees_with_oracle_on_corpus() {
    for (name, m) in corpus() {
        let oracle = oracle_surface_girth(&m, 12, 20_000_000).unwrap();
        let run = surface_girth(&m, 8).unwrap();
        assert_eq!(run.as_ref().map(|r| r.bound), oracle.girth, "{name}");
    }
}

#[test]
fn annulus_girth_is_core_curve_girth() {
    for name in ["annulus_a_g1", "annulus_aa_g1", "annulus_aaa_g1", "annulus_abAB", "annulus_aabb", "annulus_aabbb"] {
        let m = fixture(name);
        let core = &boundary_components(&m)[0].word;
        let want = girth_word(core).unwrap().girth;
        let got = surface_girth(&m, 8).unwrap().map(|r| r.bound);
        assert_eq!(got, Some(want), "{name}");
    }
    assert_eq!(surface_girth(&fixture("annulus_aaa_g1"), 8).unwrap().unwrap().bound, 3);
    assert_eq!(surface_girth(&fixture("annulus_abAB"), 8).unwrap().unwrap().bound, 2);
}

#[test]
fn annulus_around_a_generator_has_girth_zero() {
    let run = girth_surface(0, &fixture("annulus")).unwrap();
    let w = run.witness.expect("girth zero");
    assert_eq!(w.certificate.girth, 0);
    assert!(w.disc.is_some());
    assert_eq!(w.curve.crossings, 0);
}

#[test]
fn zero_arc_maps_have_girth_zero() {
    for name in ["zero_arc_g1", "zero_arc_g2"] {
        let m = fixture(name);
        assert_eq!(oracle_surface_girth(&m, 6, 1_000_000).unwrap().girth, Some(0), "{name}");
        assert!(girth_surface(0, &m).unwrap().witness.is_some(), "{name}");
    }
}

#[test]
fn girth_above_bound_finds_nothing() {
    let m = fixture("annulus_abAB");
    assert!(girth_surface(1, &m).unwrap().witness.is_none());
    assert!(surface_girth(&m, 1).unwrap().is_none());
}

#[test]
fn witnesses_respect_their_bounds() {
    for (name, m) in corpus() {
        for n in 0..=4 {
            let run = girth_surface(n, &m).unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            if let Some(w) = run.witness {
                assert!(w.certificate.girth <= n, "{name} n={n}");
                assert!(w.curve.crossings <= n.max(1), "{name} n={n}");
                if let Some(a) = &w.certificate.interface {
                    let seg = segregating_roads(&w.map, a).unwrap();
                    assert!(seg.count() <= n, "{name} n={n}");
                }
            }
        }
    }
}

#[test]
fn segregation_examples() {
    let left = segregating_roads(&fixture("segregation_left"), &iface("B:a W:AbB G:-")).unwrap();
    assert_eq!(left.count(), 1);
    assert_eq!(left.roads[0].prongs, 4);
    assert_eq!(left.roads[0].lines.len(), 1);

    let right = segregating_roads(&fixture("segregation_right"), &iface("B:aA W:bB G:-")).unwrap();
    assert_eq!(right.count(), 0);

    // The three-prong roads of this map all border the gray country.
    let gray = segregating_roads(&fixture("dual_graph"), &iface("B:aB W:b G:A")).unwrap();
    assert_eq!(gray.count(), 0);

    assert!(matches!(
        segregating_roads(&fixture("annulus_a_g1"), &iface("B:ab W:AB G:-")),
        Err(SurfaceError::Unsupported(_))
    ));
}

/// Brute force: a road segregates when walking around it the colours of
/// its borders change exactly twice and include no gray.
#[test]
fn segregation_matches_colour_walk() {
    for (name, m) in corpus() {
        for a in all_interfaces(m.genus) {
            let seg = segregating_roads(&m, &a).unwrap();
            for (f, face) in m.faces.iter().enumerate() {
                if !face.in_s || face.boundary.len() != 1 {
                    continue;
                }
                let colours: Vec<Color> = face.boundary[0]
                    .iter()
                    .filter(|iv| !m.countries[iv.country].is_empty())
                    .map(|iv| a.color(Letter::from_index(iv.country)))
                    .collect();
                let k = colours.len();
                let changes = (0..k).filter(|&i| colours[i] != colours[(i + 1) % k]).count();
                let want = !colours.contains(&Color::Gray) && changes == 2;
                assert_eq!(seg.is_segregating(f), want, "{name} {a} f{f} {colours:?}");
            }
        }
    }
}

#[test]
fn continent_examples() {
    let d = continents(&fixture("map1"), &iface("B:a W:AbB G:-")).unwrap();
    assert_eq!(d.continents, vec![vec![0], vec![1, 2, 3]]);
    assert_eq!(d.arcs().count(), 0);

    let g = continents(&fixture("graymap"), &iface("B:AB W:b G:a")).unwrap();
    assert_eq!(g.outer, 0);
    assert!(g.arcs().count() > 0);
    assert!(g.continents.iter().flatten().all(|&c| c != 0));

    let z = continents(&fixture("zero_arc_g2"), &iface("B:aA W:bB G:-")).unwrap();
    assert_eq!(z.continents, vec![vec![0], vec![1], vec![2], vec![3]]);
}

#[test]
fn disc_bounds_hold_on_minimal_maps() {
    for (name, m) in corpus() {
        let Ok((m, _)) = locally_minimize_map(&m) else { continue };
        if m.faces.iter().any(|f| f.boundary.len() > 1) || euler_char(&m).unwrap() > 0 {
            continue;
        }
        let e = ec(&m).unwrap();
        for a in all_interfaces(m.genus) {
            let seg = segregating_roads(&m, &a).unwrap();
            let k = construct_disc(&m, &a, &seg).unwrap_or_else(|err| panic!("{name} {a}: {err}"));
            let n = seg.count() as i64;
            let limit = if a.letters_of(Color::Gray).is_empty() { e + n } else { e + 2 * n + 1 };
            assert!((k.crossing_count() / 2) as i64 <= limit, "{name} {a}");
            construct_curve(&m, &k).unwrap_or_else(|err| panic!("{name} {a}: {err}"));
        }
    }
}

#[test]
fn zero_arc_disc_misses_everything() {
    let m = fixture("zero_arc_g2");
    let a = iface("B:ab W:AB G:-");
    let seg = segregating_roads(&m, &a).unwrap();
    assert_eq!(construct_disc(&m, &a, &seg).unwrap().crossing_count(), 0);
}

#[test]
fn annulus_curve_crosses_one_more_than_the_spare_arcs() {
    let m = fixture("annulus_abAB");
    let a = iface("B:abB W:A G:-");
    let seg = segregating_roads(&m, &a).unwrap();
    let k = construct_disc(&m, &a, &seg).unwrap();
    assert_eq!(k.crossing_count() / 2, 2);
    assert_eq!(construct_curve(&m, &k).unwrap().crossings, 2);
}

#[test]
fn compressible_complement_gives_disjoint_curve() {
    for name in ["polygonarcs", "complement_bouquet"] {
        let m = fixture(name);
        let a = iface("B:ab W:AB G:-");
        let seg = segregating_roads(&m, &a).unwrap();
        let k = construct_disc(&m, &a, &seg).unwrap();
        assert_eq!(construct_curve(&m, &k).unwrap().crossings, 0, "{name}");
    }
    assert_eq!(euler_char(&fixture("polygonarcs")).unwrap(), -2);
}

#[test]
fn oracle_budget_and_length_limits() {
    let m = fixture("annulus_abAB");
    assert!(matches!(oracle_surface_girth(&m, 12, 3), Err(SurfaceError::BudgetExhausted { budget: 3 })));
    assert!(matches!(oracle_surface_girth(&m, 1, 1_000_000), Err(SurfaceError::LengthBound { bound: 1 })));
    let o = oracle_surface_girth(&m, 12, 1_000_000).unwrap();
    assert_eq!(o.girth, Some(2));
    assert!(!o.compressible);
}

#[test]
fn disc_pieces_are_ignored() {
    let m = fixture("disc_piece");
    assert_eq!(surface_girth(&m, 4).unwrap().map(|r| r.bound), Some(0));
}
