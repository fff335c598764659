use girth_interface::{enumerate_d_discs, enumerate_d_half_discs, wedge, wedge_partial, Color, DDisc, DHalfDisc};
use girth_word::{Automorphism, CyclicWord, Letter, Word};

use crate::CurveError;

/// One accepted descent step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub half_disc: DHalfDisc,
    pub before: usize,
    pub after: usize,
}

/// Result of descending to a locally minimal generating system.
#[derive(Clone, Debug)]
pub struct Descent {
    /// The word written in the final generating system.
    pub word: CyclicWord,
    /// Composition of all steps, mapping the input word to `word`.
    pub automorphism: Automorphism,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug)]
pub struct GirthCertificate {
    pub girth: usize,
    /// A disc realizing `girth` against `descent.word`.
    pub witness: DDisc,
    pub descent: Descent,
}

/// Whether the black/white crossing count of `w` is strictly below both
/// the black/gray and the white/gray counts.
pub fn is_shortcut(w: &CyclicWord, h: &DHalfDisc) -> Result<bool, CurveError> {
    let bw = wedge(w, h.interface())?;
    let bg = wedge_partial(w, &h.black_vs_gray())?;
    let wg = wedge_partial(w, &h.white_vs_gray())?;
    Ok(bw < bg && bw < wg)
}

/// The generating-system change attached to a half-disc. With `c` the gray
/// letter, colors exchanged so that `c⁻¹` is black, each other generator
/// `a` is sent to `c⁻¹ a c`, `c⁻¹ a`, `a c` or `a` according to whether `a`
/// and `a⁻¹` are black. The generator of `c` is fixed.
pub fn shortcut_automorphism(h: &DHalfDisc) -> Automorphism {
    let rank = h.rank();
    let c = h.gray();
    let flip = h.color(c.inverse()) != Color::Black;
    let black = |l: Letter| (h.color(l) == Color::Black) != flip;
    let mut images = Vec::with_capacity(rank as usize);
    let mut inverse = Vec::with_capacity(rank as usize);
    for i in 1..=rank {
        let a = Letter::new(i, true);
        if i == c.generator() {
            images.push(Word::new(rank, vec![a]).expect("in rank"));
            inverse.push(Word::new(rank, vec![a]).expect("in rank"));
            continue;
        }
        let (pre, post) = (black(a), black(a.inverse()));
        let build = |left: Letter, right: Letter| {
            let mut ls = Vec::with_capacity(3);
            if pre {
                ls.push(left);
            }
            ls.push(a);
            if post {
                ls.push(right);
            }
            Word::new(rank, ls).expect("in rank")
        };
        images.push(build(c.inverse(), c));
        inverse.push(build(c, c.inverse()));
    }
    Automorphism::from_images(rank, h.to_string(), images, Some(inverse)).expect("valid images")
}

/// Applies the half-disc automorphism and checks that the cyclic length
/// strictly drops.
pub fn apply_shortcut(w: &CyclicWord, h: &DHalfDisc) -> Result<(CyclicWord, Automorphism), CurveError> {
    let phi = shortcut_automorphism(h);
    let image = phi.apply(&w.to_word())?.cyclic();
    if image.len() >= w.len() {
        return Err(CurveError::PostconditionViolation(format!(
            "half-disc {h} sends {w} to {image}, which is not shorter"
        )));
    }
    Ok((image, phi))
}

/// The shortcut half-disc with the largest length decrease, ties broken by
/// the least half-disc. `None` means the system is locally minimal for `w`.
pub fn find_shortcut(w: &CyclicWord) -> Result<Option<DHalfDisc>, CurveError> {
    Ok(best_shortcut(w)?.map(|(h, _, _)| h))
}

type Shortcut = (DHalfDisc, CyclicWord, Automorphism);

fn best_shortcut(w: &CyclicWord) -> Result<Option<Shortcut>, CurveError> {
    if w.is_empty() {
        return Err(CurveError::TrivialWord);
    }
    let mut best: Option<Shortcut> = None;
    for h in enumerate_d_half_discs(w.rank()) {
        if !is_shortcut(w, &h)? {
            continue;
        }
        let (image, phi) = apply_shortcut(w, &h)?;
        let better = match &best {
            None => true,
            Some((bh, bimage, _)) => image.len() < bimage.len() || (image.len() == bimage.len() && h < *bh),
        };
        if better {
            best = Some((h, image, phi));
        }
    }
    Ok(best)
}

/// Repeatedly applies the best shortcut until none remains.
pub fn locally_minimize(w: &Word) -> Result<Descent, CurveError> {
    let mut word = w.cyclic();
    if word.is_empty() {
        return Err(CurveError::TrivialWord);
    }
    let mut automorphism = Automorphism::identity(w.rank());
    let mut trace = Vec::new();
    while let Some((h, image, phi)) = best_shortcut(&word)? {
        trace.push(TraceStep { half_disc: h, before: word.len(), after: image.len() });
        automorphism = phi.compose(&automorphism)?;
        word = image;
    }
    Ok(Descent { word, automorphism, trace })
}

/// Least crossing count over all discs, with the first disc attaining it.
pub fn min_disc_wedge(w: &CyclicWord) -> Result<(usize, DDisc), CurveError> {
    // counts[i][j]: cyclic pairs (x, y) with x⁻¹ of index i and y of index j.
    let n = 2 * w.rank() as usize;
    let mut counts = vec![0usize; n * n];
    for (x, y) in w.cyclic_pairs() {
        counts[x.inverse().index() * n + y.index()] += 1;
    }
    let pairs: Vec<(usize, usize, usize)> =
        (0..n * n).filter(|&k| counts[k] > 0).map(|k| (k / n, k % n, counts[k])).collect();
    let mut best: Option<(usize, DDisc)> = None;
    for d in enumerate_d_discs(w.rank()) {
        let colors = d.interface().colors();
        let k: usize = pairs.iter().filter(|&&(i, j, _)| colors[i] != colors[j]).map(|&(_, _, c)| c).sum();
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            let done = k == 0;
            best = Some((k, d));
            if done {
                break;
            }
        }
    }
    Ok(best.expect("at least one disc for every rank"))
}

/// Girth of the conjugacy class of `w`.
pub fn girth_word(w: &Word) -> Result<GirthCertificate, CurveError> {
    let descent = locally_minimize(w)?;
    let (girth, witness) = min_disc_wedge(&descent.word)?;
    if girth == 1 && w.rank() >= 2 {
        return Err(CurveError::PostconditionViolation(format!("girth one computed for {w} in rank {}", w.rank())));
    }
    Ok(GirthCertificate { girth, witness, descent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use girth_interface::DInterface;

    fn half(s: &str) -> DHalfDisc {
        DHalfDisc::new(DInterface::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn table_cells() {
        // Gray b, b⁻¹ black: a black with a⁻¹ white gives a -> B a.
        let phi = shortcut_automorphism(&half("B:aB W:A G:b"));
        assert_eq!(phi.to_string(), "a->Ba b->b");
        let phi = shortcut_automorphism(&half("B:aAB W:cC G:b"));
        assert_eq!(phi.to_string(), "a->Bab b->b c->c");
        let phi = shortcut_automorphism(&half("B:BC W:aAc G:b"));
        assert_eq!(phi.to_string(), "a->a b->b c->cb");
    }

    #[test]
    fn colors_exchanged_when_gray_inverse_is_white() {
        let h = half("B:a W:AB G:b");
        let g = half("B:AB W:a G:b");
        assert_eq!(shortcut_automorphism(&h).images(), shortcut_automorphism(&g).images());
    }

    #[test]
    fn inverse_images_undo() {
        for h in enumerate_d_half_discs(3) {
            let phi = shortcut_automorphism(&h);
            assert!(phi.compose(&phi.inverse().unwrap()).unwrap().is_identity());
        }
    }
}
