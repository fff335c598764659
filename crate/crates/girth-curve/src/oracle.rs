use std::collections::{HashSet, VecDeque};

use girth_interface::enumerate_d_half_discs;
use girth_word::{Automorphism, CyclicWord, Word};

use crate::descent::{min_disc_wedge, shortcut_automorphism};
use crate::CurveError;

/// Outcome of an exhaustive search.
#[derive(Clone, Debug)]
pub struct OracleRun {
    pub girth: usize,
    /// Every cyclic word visited. The moves are closed under inversion, so
    /// a search from any visited word of the starting length visits the
    /// same set and returns the same girth.
    pub visited: HashSet<CyclicWord>,
}

/// Exhaustive check of [`crate::girth_word`]: breadth-first search over all
/// words reachable by half-disc automorphisms and their inverses without
/// exceeding the starting length, returning the least disc crossing count
/// seen. Fails once more than `budget` distinct cyclic words are visited.
pub fn oracle_girth(w: &Word, budget: usize) -> Result<usize, CurveError> {
    Ok(oracle_search(w, budget)?.girth)
}

/// [`oracle_girth`] that also returns the visited set.
pub fn oracle_search(w: &Word, budget: usize) -> Result<OracleRun, CurveError> {
    let start = w.cyclic();
    if start.is_empty() {
        return Err(CurveError::TrivialWord);
    }
    let rank = w.rank();
    let mut moves: Vec<Automorphism> = Vec::new();
    for h in enumerate_d_half_discs(rank) {
        let phi = shortcut_automorphism(&h);
        moves.push(phi.inverse().expect("inverse recorded"));
        moves.push(phi);
    }
    let limit = start.len();
    let mut visited = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut girth = usize::MAX;
    while let Some(x) = queue.pop_front() {
        girth = girth.min(min_disc_wedge(&x)?.0);
        let word = x.to_word();
        for phi in &moves {
            let y = phi.apply(&word)?.cyclic();
            if y.len() <= limit && !visited.contains(&y) {
                if visited.len() >= budget {
                    return Err(CurveError::BudgetExhausted { budget });
                }
                visited.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(OracleRun { girth, visited })
}
