use rayon::prelude::*;

use super::enumerate::{check_enumerable, mask_interp};
use crate::error::Result;
use crate::lattice::{kleene_lfp, Bits, Interp};
use crate::limits::Limits;
use crate::syntax::Program;

/// Stable models via the Gelfond–Lifschitz reduct: `x` is stable when it is
/// the least model of the positive program obtained by deleting every rule
/// with a negated atom in `x` and every remaining negative literal.
///
/// Deliberately independent of the approximation machinery; used as an oracle.
pub fn gl_reduct_stable(program: &Program, limits: &Limits) -> Result<Vec<Interp>> {
    let universe = program.universe();
    let n = universe.len();
    check_enumerable("reduct stable-model check", n, limits)?;
    let found: Vec<Option<Interp>> = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let x = mask_interp(universe, mask);
            let reduct: Vec<(usize, &[usize])> = program
                .rules()
                .iter()
                .filter(|r| !r.is_inert() && r.neg.iter().all(|&q| !x.contains(q)))
                .map(|r| (r.head, r.pos.as_slice()))
                .collect();
            let least = kleene_lfp(universe, |z| {
                let mut out = Bits::empty(n);
                for (head, pos) in &reduct {
                    if pos.iter().all(|&p| z.contains(p)) {
                        out.insert(*head);
                    }
                }
                Ok(Interp::from_bits(universe, out))
            })?;
            Ok((least == x).then_some(x))
        })
        .collect::<Result<_>>()?;
    let mut models: Vec<Interp> = found.into_iter().flatten().collect();
    models.sort();
    Ok(models)
}
