use std::collections::BTreeSet;

use girth_interface::{
    complexity, enumerate_d_discs, enumerate_d_half_discs, wedge, Color, DDisc, DHalfDisc, DInterface,
    FiniteTreeColoring, InterfaceError, Subordinate,
};
use girth_word::{Letter, Word};

fn iface(s: &str) -> DInterface {
    DInterface::parse(s).unwrap()
}

fn cyc(rank: u8, s: &str) -> girth_word::CyclicWord {
    Word::parse(rank, s).unwrap().cyclic()
}

/// All three-colorings of the 2g letters with black and white nonempty and
/// the given gray count, taken up to exchanging black and white.
fn brute_force_classes(rank: u8, gray: usize) -> BTreeSet<Vec<Color>> {
    let n = 2 * rank as usize;
    let mut out = BTreeSet::new();
    for code in 0..3usize.pow(n as u32) {
        let colors: Vec<Color> = (0..n)
            .map(|i| match code / 3usize.pow(i as u32) % 3 {
                0 => Color::Black,
                1 => Color::White,
                _ => Color::Gray,
            })
            .collect();
        let g = colors.iter().filter(|&&c| c == Color::Gray).count();
        if g != gray || !colors.contains(&Color::Black) || !colors.contains(&Color::White) {
            continue;
        }
        let swapped: Vec<Color> = colors.iter().map(|c| c.swapped()).collect();
        out.insert(colors.min(swapped));
    }
    out
}

#[test]
fn wedge_examples() {
    assert_eq!(wedge(&cyc(2, "ab"), &iface("B:aB W:Ab G:-")).unwrap(), 0);
    assert_eq!(wedge(&cyc(2, "abAB"), &iface("B:aA W:bB G:-")).unwrap(), 4);
}

#[test]
fn wedge_rank_mismatch() {
    let e = wedge(&cyc(3, "abc"), &iface("B:aA W:bB G:-")).unwrap_err();
    assert!(matches!(e, InterfaceError::Word(_)));
}

#[test]
fn complexity_examples() {
    for (s, n) in [("abAB", 4), ("abA", 1), ("", 0)] {
        assert_eq!(complexity(&Word::parse(2, s).unwrap()), n);
    }
}

#[test]
fn enumeration_counts() {
    for (g, d, h) in [(1u8, 1usize, 0usize), (2, 7, 12), (3, 31, 90), (4, 127, 504)] {
        assert_eq!(enumerate_d_discs(g).count(), d);
        assert_eq!(enumerate_d_half_discs(g).count(), h);
    }
}

#[test]
fn enumeration_matches_brute_force_classes() {
    for g in 1..=3u8 {
        let discs: BTreeSet<Vec<Color>> = enumerate_d_discs(g).map(|d| d.interface().colors().to_vec()).collect();
        let want: BTreeSet<Vec<Color>> = brute_force_classes(g, 0)
            .into_iter()
            .map(|c| DInterface::new(g, c).unwrap().canonical().colors().to_vec())
            .collect();
        assert_eq!(discs, want);
        let halves: BTreeSet<Vec<Color>> = enumerate_d_half_discs(g).map(|d| d.interface().colors().to_vec()).collect();
        let want: BTreeSet<Vec<Color>> = brute_force_classes(g, 1)
            .into_iter()
            .map(|c| DInterface::new(g, c).unwrap().canonical().colors().to_vec())
            .collect();
        assert_eq!(halves, want);
    }
}

#[test]
fn enumerated_items_are_canonical() {
    for d in enumerate_d_discs(3) {
        assert_eq!(d.color(Letter::from_char('a').unwrap()), Color::Black);
        assert_eq!(d.interface().canonical(), *d.interface());
    }
    for h in enumerate_d_half_discs(3) {
        assert_eq!(h.interface().canonical(), *h.interface());
    }
}

#[test]
fn text_round_trip() {
    for s in ["B:aB W:Ab G:-", "B:a W:bB G:A", "B:abc W:ABC G:-", "B:aA W:B G:b"] {
        assert_eq!(iface(s).to_string(), s);
    }
    for d in enumerate_d_half_discs(3) {
        let s = d.to_string();
        assert_eq!(DInterface::parse(&s).unwrap().to_string(), s);
    }
}

#[test]
fn text_errors() {
    for bad in [
        "",
        "B:a W:A",
        "B:a W:A G:- X:-",
        "W:A B:a G:-",
        "B:a W: G:A",
        "B:a W:A G:a",
        "B:ab W:A G:-",
        "B:a W:A? G:-",
        "B:- W:aA G:-",
        "B:aA W:- G:-",
        "B:- W:- G:-",
    ] {
        assert!(DInterface::parse(bad).is_err(), "{bad:?} should be rejected");
    }
}

#[test]
fn typed_invariants() {
    assert!(matches!(DDisc::new(iface("B:a W:b G:AB")), Err(InterfaceError::NotDisc(2))));
    assert!(matches!(DHalfDisc::new(iface("B:aA W:bB G:-")), Err(InterfaceError::NotHalfDisc(0))));
    let h = DHalfDisc::new(iface("B:aB W:A G:b")).unwrap();
    assert_eq!(h.gray(), Letter::from_char('b').unwrap());
}

#[test]
fn auxiliary_colorings_count_only_colored_pairs() {
    let h = DHalfDisc::new(iface("B:aB W:A G:b")).unwrap();
    let w = cyc(2, "abAB");
    // Oracle: count pairs directly from the auxiliary color assignment.
    let aux = |l: Letter, black: &[char]| -> Option<bool> {
        let c = l.to_char();
        if c == 'b' {
            Some(false)
        } else if black.contains(&c) {
            Some(true)
        } else {
            None
        }
    };
    for (black, partial) in [(&['a', 'B'][..], h.black_vs_gray()), (&['A'][..], h.white_vs_gray())] {
        let expect = w
            .cyclic_pairs()
            .filter(|&(x, y)| match (aux(x.inverse(), black), aux(y, black)) {
                (Some(p), Some(q)) => p != q,
                _ => false,
            })
            .count();
        assert_eq!(girth_interface::wedge_partial(&w, &partial).unwrap(), expect);
    }
}

fn word(rank: u8, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

#[test]
fn doubly_labeled_edge_gives_disc() {
    // Single vertex: the edge along `b` leads to black ends, all others white.
    let c =
        FiniteTreeColoring::from_fn(
            2,
            vec![word(2, "")],
            |_, l| {
                if l.to_char() == 'b' {
                    Color::Black
                } else {
                    Color::White
                }
            },
        )
        .unwrap();
    match c.extract_subordinate().unwrap() {
        Subordinate::Disc { base, disc } => {
            assert!(base.is_empty());
            assert_eq!(disc.to_string(), "B:b W:aAB G:-");
        }
        other => panic!("expected a disc, got {other:?}"),
    }
}

#[test]
fn single_gray_edge_gives_two_half_discs() {
    // Vertices 1 and a. At 1: A,b black and B white. At a: b black, a,B white.
    let c = FiniteTreeColoring::from_fn(2, vec![word(2, ""), word(2, "a")], |v, l| {
        let at_root = v.is_empty();
        match (at_root, l.to_char()) {
            (true, 'A') | (true, 'b') | (false, 'b') => Color::Black,
            _ => Color::White,
        }
    })
    .unwrap();
    assert!(c.is_gray(&word(2, ""), Letter::from_char('a').unwrap()));
    let Subordinate::HalfDiscs([(v, hv), (w, hw)]) = c.extract_subordinate().unwrap() else {
        panic!("expected half-discs");
    };
    assert_eq!(v, word(2, ""));
    assert_eq!(w, word(2, "a"));
    assert_eq!(hv.to_string(), "B:Ab W:B G:a");
    assert_eq!(hw.to_string(), "B:b W:aB G:A");
    assert!(c.is_subordinate(&v, hv.interface()));
    assert!(c.is_subordinate(&w, hw.interface()));
}

#[test]
fn monochrome_frontier_rejected() {
    let e = FiniteTreeColoring::from_fn(2, vec![word(2, "")], |_, _| Color::Black).unwrap_err();
    assert!(matches!(e, InterfaceError::MalformedColoring(_)));
}

#[test]
fn malformed_vertex_sets_rejected() {
    let disconnected = FiniteTreeColoring::from_fn(2, vec![word(2, ""), word(2, "ab")], |_, l| {
        if l.to_char() == 'a' {
            Color::Black
        } else {
            Color::White
        }
    });
    assert!(disconnected.is_err());
    let missing = FiniteTreeColoring::new(
        2,
        vec![word(2, "")],
        vec![(word(2, ""), Letter::from_char('a').unwrap(), Color::Black)],
    );
    assert!(missing.is_err());
}
