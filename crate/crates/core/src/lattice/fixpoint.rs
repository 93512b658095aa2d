use super::interp::{Interp, Universe};
use crate::error::{Error, Result};

/// Least fixpoint of a ⊆-monotone operator, by iteration from ∅.
pub fn kleene_lfp<F>(universe: &Universe, op: F) -> Result<Interp>
where
    F: FnMut(&Interp) -> Result<Interp>,
{
    kleene_lfp_from(Interp::empty(universe), op)
}

/// Kleene iteration from `start`, which must be a pre-fixpoint (`start ⊆ op(start)`).
///
/// An ascending chain in a powerset of `n` atoms has at most `n + 1` distinct
/// elements, so the fixpoint is confirmed within `n + 1` applications. A
/// descending step or a longer run means `op` is not monotone.
pub fn kleene_lfp_from<F>(start: Interp, mut op: F) -> Result<Interp>
where
    F: FnMut(&Interp) -> Result<Interp>,
{
    let bound = start.universe().len() + 1;
    let mut current = start;
    for step in 0..bound {
        let next = op(&current)?;
        if next == current {
            return Ok(current);
        }
        if !current.bits().is_subset(next.bits()) {
            return Err(Error::NonMonotone(format!(
                "iterate {} at step {} is not contained in its image {}",
                current,
                step + 1,
                next
            )));
        }
        current = next;
    }
    Err(Error::NonMonotone(format!(
        "no fixpoint after {bound} applications"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AtomUniverse;

    #[test]
    fn constant_and_identity() {
        let u = AtomUniverse::shared(["a", "b"]).unwrap();
        let empty = Interp::empty(&u);
        assert!(kleene_lfp(&u, |_| Ok(Interp::empty(&u))).unwrap().is_empty());
        assert_eq!(kleene_lfp(&u, |x| Ok(x.clone())).unwrap(), empty);
    }

    #[test]
    fn chain_reaches_top_within_bound() {
        // a; b <- a; c <- b
        let u = AtomUniverse::shared(["a", "b", "c"]).unwrap();
        let lfp = kleene_lfp(&u, |x| {
            let mut out = vec![0];
            if x.contains(0) {
                out.push(1);
            }
            if x.contains(1) {
                out.push(2);
            }
            Interp::from_positions(&u, out)
        })
        .unwrap();
        assert_eq!(lfp, Interp::full(&u));
    }

    #[test]
    fn oscillation_is_reported() {
        // p <- not p
        let u = AtomUniverse::shared(["p"]).unwrap();
        let res = kleene_lfp(&u, |x| {
            Interp::from_positions(&u, if x.contains(0) { vec![] } else { vec![0] })
        });
        assert!(matches!(res, Err(Error::NonMonotone(_))));
    }

    #[test]
    fn lfp_is_least_fixpoint_of_random_monotone_maps() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8usize {
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let u = AtomUniverse::shared(names).unwrap();
            let all = u.full_scope();
            for _ in 0..20 {
                // definite rules: head <- conjunction of body atoms
                let rules: Vec<(usize, Vec<usize>)> = (0..rng.gen_range(0..2 * n))
                    .map(|_| {
                        let body = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..n)).collect();
                        (rng.gen_range(0..n), body)
                    })
                    .collect();
                let op = |x: &Interp| {
                    Interp::from_positions(
                        &u,
                        rules
                            .iter()
                            .filter(|(_, b)| b.iter().all(|&p| x.contains(p)))
                            .map(|(h, _)| *h),
                    )
                };
                let lfp = kleene_lfp(&u, op).unwrap();
                assert_eq!(op(&lfp).unwrap(), lfp);
                for x in Interp::subsets(&u, &all) {
                    if op(&x).unwrap() == x {
                        assert!(lfp.is_subset(&x).unwrap());
                    }
                }
            }
        }
    }
}
