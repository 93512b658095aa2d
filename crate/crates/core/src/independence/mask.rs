//! Word-sized encodings of small programs for the brute-force checks.

use crate::error::Result;
use crate::limits::Limits;
use crate::syntax::Program;

pub(crate) const MAX_MASK_ATOMS: usize = 63;

#[derive(Clone, Copy, Debug)]
struct MaskRule {
    head: u64,
    pos: u64,
    neg: u64,
}

/// A program whose universe fits in a machine word. Inert rules are dropped.
#[derive(Clone, Debug)]
pub(crate) struct MaskProgram {
    rules: Vec<MaskRule>,
}

fn mask_of(positions: &[usize]) -> u64 {
    positions.iter().fold(0, |m, &p| m | 1 << p)
}

impl MaskProgram {
    pub(crate) fn new(program: &Program, what: &str) -> Result<Self> {
        let atoms = program.atom_count();
        Limits::check_atoms(what, atoms, MAX_MASK_ATOMS, "enumerate")?;
        let rules = program
            .rules()
            .iter()
            .filter(|r| !r.is_inert())
            .map(|r| MaskRule {
                head: 1 << r.head,
                pos: mask_of(&r.pos),
                neg: mask_of(&r.neg),
            })
            .collect();
        Ok(MaskProgram { rules })
    }

    pub(crate) fn ic2(&self, x: u64) -> u64 {
        self.rules
            .iter()
            .filter(|r| r.pos & !x == 0 && r.neg & x == 0)
            .fold(0, |acc, r| acc | r.head)
    }

    pub(crate) fn ic4(&self, x: u64, y: u64) -> (u64, u64) {
        let mut lo = 0;
        let mut hi = 0;
        for r in &self.rules {
            if r.pos & !x == 0 && r.neg & y == 0 {
                lo |= r.head;
            }
            if r.pos & !y == 0 && r.neg & x == 0 {
                hi |= r.head;
            }
        }
        (lo, hi)
    }
}

/// Every submask of `m`, starting with 0.
pub(crate) fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
        Some(cur)
    })
}

pub(crate) fn scope_mask(positions: &[usize]) -> u64 {
    mask_of(positions)
}
