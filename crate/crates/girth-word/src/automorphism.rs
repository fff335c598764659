use std::fmt;

use crate::letter::Letter;
use crate::word::{check_rank, free_reduce, same_rank, Word, WordError};

/// One recorded construction step: the images it applied and, when known,
/// the images of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub images: Vec<Word>,
    pub inverse: Option<Vec<Word>>,
}

/// An endomorphism of the free group given by generator images, with a log of
/// the steps that built it. Steps are listed in application order: the first
/// entry acts on a word first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    rank: u8,
    images: Vec<Word>,
    log: Vec<Step>,
}

impl Automorphism {
    pub fn identity(rank: u8) -> Self {
        check_rank(rank).expect("valid rank");
        Automorphism { rank, images: identity_images(rank), log: Vec::new() }
    }

    /// Builds an atomic map from images. `inverse` images, if provided, make
    /// [`Automorphism::inverse`] available.
    pub fn from_images(
        rank: u8,
        label: impl Into<String>,
        images: Vec<Word>,
        inverse: Option<Vec<Word>>,
    ) -> Result<Self, WordError> {
        check_rank(rank)?;
        if images.len() != rank as usize {
            return Err(WordError::RankMismatch { left: rank, right: images.len() as u8 });
        }
        for im in images.iter().chain(inverse.iter().flatten()) {
            same_rank(rank, im.rank())?;
        }
        let images: Vec<Word> = images.iter().map(Word::reduce).collect();
        let step = Step { label: label.into(), images: images.clone(), inverse };
        Ok(Automorphism { rank, images, log: vec![step] })
    }

    /// Elementary Nielsen map `x ↦ x y` (generator `x`, letter `y` of a
    /// different generator).
    pub fn nielsen_right(rank: u8, x: u8, y: Letter) -> Self {
        assert_ne!(x, y.generator(), "Nielsen multiplier must use another generator");
        let mut im = identity_images(rank);
        let mut inv = identity_images(rank);
        let gx = Letter::new(x, true);
        im[x as usize - 1] = Word::new(rank, vec![gx, y]).expect("in rank");
        inv[x as usize - 1] = Word::new(rank, vec![gx, y.inverse()]).expect("in rank");
        Automorphism::from_images(rank, format!("{gx}->{gx}{y}"), im, Some(inv)).expect("valid")
    }

    /// Elementary Nielsen map `x ↦ y x`.
    pub fn nielsen_left(rank: u8, x: u8, y: Letter) -> Self {
        assert_ne!(x, y.generator(), "Nielsen multiplier must use another generator");
        let mut im = identity_images(rank);
        let mut inv = identity_images(rank);
        let gx = Letter::new(x, true);
        im[x as usize - 1] = Word::new(rank, vec![y, gx]).expect("in rank");
        inv[x as usize - 1] = Word::new(rank, vec![y.inverse(), gx]).expect("in rank");
        Automorphism::from_images(rank, format!("{gx}->{y}{gx}"), im, Some(inv)).expect("valid")
    }

    /// Elementary Nielsen map `x ↦ x⁻¹`.
    pub fn nielsen_invert(rank: u8, x: u8) -> Self {
        let mut im = identity_images(rank);
        let gx = Letter::new(x, true);
        im[x as usize - 1] = Word::new(rank, vec![gx.inverse()]).expect("in rank");
        Automorphism::from_images(rank, format!("{gx}->{}", gx.inverse()), im.clone(), Some(im)).expect("valid")
    }

    /// Elementary Nielsen map swapping generators `x` and `y`.
    pub fn nielsen_swap(rank: u8, x: u8, y: u8) -> Self {
        let mut im = identity_images(rank);
        im.swap(x as usize - 1, y as usize - 1);
        let label = format!("{}<->{}", Letter::new(x, true), Letter::new(y, true));
        Automorphism::from_images(rank, label, im.clone(), Some(im)).expect("valid")
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn log(&self) -> &[Step] {
        &self.log
    }

    pub fn image_of(&self, l: Letter) -> Word {
        let im = &self.images[l.generator() as usize - 1];
        if l.is_positive() {
            im.clone()
        } else {
            im.inverse()
        }
    }

    /// Substitutes images and freely reduces.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        same_rank(self.rank, w.rank())?;
        let mut out = Vec::new();
        for &l in w.letters() {
            let im = &self.images[l.generator() as usize - 1];
            if l.is_positive() {
                out.extend_from_slice(im.letters());
            } else {
                out.extend(im.letters().iter().rev().map(|x| x.inverse()));
            }
        }
        Word::new(self.rank, free_reduce(out))
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, WordError> {
        same_rank(self.rank, other.rank)?;
        let images = other.images.iter().map(|im| self.apply(im)).collect::<Result<Vec<_>, _>>()?;
        let mut log = other.log.clone();
        log.extend(self.log.iter().cloned());
        Ok(Automorphism { rank: self.rank, images, log })
    }

    /// Rebuilds the map by composing the logged steps in order.
    pub fn replay(&self) -> Automorphism {
        let mut acc = Automorphism::identity(self.rank);
        for step in &self.log {
            let atom = Automorphism { rank: self.rank, images: step.images.clone(), log: vec![step.clone()] };
            acc = atom.compose(&acc).expect("same rank");
        }
        acc
    }

    /// Inverse, available when every logged step recorded its inverse images.
    pub fn inverse(&self) -> Option<Automorphism> {
        let mut acc = Automorphism::identity(self.rank);
        for step in self.log.iter().rev() {
            let inv = step.inverse.clone()?;
            let atom = Automorphism {
                rank: self.rank,
                images: inv.clone(),
                log: vec![Step {
                    label: format!("({})^-1", step.label),
                    images: inv,
                    inverse: Some(step.images.clone()),
                }],
            };
            acc = atom.compose(&acc).expect("same rank");
        }
        Some(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.images == identity_images(self.rank)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}->{}", Letter::new(i as u8 + 1, true), im)?;
        }
        Ok(())
    }
}

fn identity_images(rank: u8) -> Vec<Word> {
    (1..=rank).map(|i| Word::new(rank, vec![Letter::new(i, true)]).expect("in rank")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    #[test]
    fn identity_fixes_words() {
        let id = Automorphism::identity(2);
        assert_eq!(id.apply(&w("abAB")).unwrap(), w("abAB"));
    }

    #[test]
    fn substitution_examples() {
        let phi = Automorphism::nielsen_right(2, 1, Letter::new(2, true));
        assert_eq!(phi.apply(&w("a")).unwrap(), w("ab"));
        let img = phi.apply(&w("abAB")).unwrap();
        assert_eq!(img, w("abAB"));
        assert_eq!(img.cyclic().len(), 4);
    }

    #[test]
    fn compose_order() {
        let phi = Automorphism::nielsen_right(2, 1, Letter::new(2, true));
        let psi = Automorphism::nielsen_swap(2, 1, 2);
        let c = phi.compose(&psi).unwrap();
        let x = w("aab");
        assert_eq!(c.apply(&x).unwrap(), phi.apply(&psi.apply(&x).unwrap()).unwrap());
        assert_eq!(c.replay(), c);
    }

    #[test]
    fn inverse_of_nielsen_chain() {
        let phi = Automorphism::nielsen_left(2, 2, Letter::new(1, false))
            .compose(&Automorphism::nielsen_invert(2, 1))
            .unwrap();
        let inv = phi.inverse().unwrap();
        assert!(inv.compose(&phi).unwrap().is_identity());
        assert!(phi.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn rank_mismatch_rejected() {
        let phi = Automorphism::identity(2);
        let x = Word::parse(3, "c").unwrap();
        assert!(matches!(phi.apply(&x), Err(WordError::RankMismatch { .. })));
    }
}
