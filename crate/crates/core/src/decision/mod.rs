//! Membership in PM1..PM5 by checking the characteristic frame families.
//!
//! Refutability is monotone along each family, so the frames are scanned in
//! increasing size and the first refutation found is minimal.
//!
//! * PM2..PM5: two twins (leaves of `V`, middles of `U`, cluster points of
//!   `Y` and `X`) carrying the same valuation can be merged by a p-morphism
//!   onto the next smaller frame. Hence only valuations giving twins pairwise
//!   distinct codes are visited, and nothing beyond `m = 2^n` needs checking
//!   for `n` variables.
//! * PM1: truth at the bottom of a chain depends only on the bottom's
//!   valuation and the modal facts one step up, so chains are explored as a
//!   breadth-first search over those facts until no new ones appear.

mod chain;
mod fingerprint;

pub use fingerprint::{Fingerprint, Fingerprinter, DEFAULT_MAX_BITS};

use crate::formula::Formula;
use crate::kripke::{
    counter_model, make_frame, refute_on_frame, Compiled, CounterModel, KripkeError, SearchOptions,
};
use crate::logic::Logic;
use core::fmt;

/// Limits for a membership check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemberOptions {
    /// Largest family parameter `m` to check. `None` means `2^|Sub(phi)| + 1`.
    pub bound: Option<usize>,
    /// Total number of valuations (or chain transitions) to evaluate.
    pub max_steps: u64,
}

impl Default for MemberOptions {
    fn default() -> Self {
        MemberOptions {
            bound: None,
            max_steps: 20_000_000,
        }
    }
}

impl MemberOptions {
    pub fn with_bound(bound: Option<usize>) -> Self {
        MemberOptions {
            bound,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Refuted on `make_frame(logic, size)`; `size` is the least such.
    Refuted {
        size: usize,
        witness: CounterModel,
    },
    /// The step budget ran out while checking frame `size`.
    BudgetExceeded {
        size: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    /// The bound on `m` in force.
    pub bound_used: usize,
    /// Largest `m` actually examined.
    pub checked_up_to: usize,
}

impl MembershipVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self.verdict, Verdict::Valid)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, Verdict::Refuted { .. })
    }

    /// `Some(true)` for Valid, `Some(false)` for Refuted.
    pub fn decided(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Valid => Some(true),
            Verdict::Refuted { .. } => Some(false),
            Verdict::BudgetExceeded { .. } => None,
        }
    }
}

/// A membership check that ran out of budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub logic: Logic,
    pub size: usize,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} membership check exceeded its budget at frame size {}",
            self.logic, self.size
        )
    }
}

impl core::error::Error for BudgetExceeded {}

/// The default bound `2^|Sub(phi)| + 1`, saturating.
pub fn default_bound(phi: &Formula) -> usize {
    let sub = Compiled::new(phi).len();
    u32::try_from(sub)
        .ok()
        .and_then(|s| 1usize.checked_shl(s))
        .and_then(|b| b.checked_add(1))
        .unwrap_or(usize::MAX)
}

/// Decides `phi ∈ logic` with the default step budget.
pub fn member(logic: Logic, phi: &Formula, bound: Option<usize>) -> MembershipVerdict {
    member_with(logic, phi, &MemberOptions::with_bound(bound))
}

pub fn member_with(logic: Logic, phi: &Formula, opts: &MemberOptions) -> MembershipVerdict {
    let bound = opts.bound.unwrap_or_else(|| default_bound(phi));
    let c = Compiled::new(phi);
    if logic == Logic::Pm1 {
        return chain::member_pm1(&c, bound, opts.max_steps);
    }
    let n = c.vars().len();
    let saturation = u32::try_from(n)
        .ok()
        .and_then(|n| 1usize.checked_shl(n))
        .unwrap_or(usize::MAX);
    let last = bound.min(saturation);
    let mut spent = 0;
    let mut checked = 0;
    for m in 1..=last {
        let frame = make_frame(logic, m).expect("m >= 1");
        let search = SearchOptions {
            symmetry: true,
            distinct_twins: true,
            max_valuations: opts.max_steps,
        };
        checked = m;
        match refute_on_frame(&frame, &c, search, &mut spent) {
            Ok(None) => {}
            Ok(Some(r)) => {
                let witness = counter_model(&frame, &c, &r);
                return MembershipVerdict {
                    verdict: Verdict::Refuted { size: m, witness },
                    bound_used: bound,
                    checked_up_to: m,
                };
            }
            Err(KripkeError::BudgetExceeded { .. }) => {
                return MembershipVerdict {
                    verdict: Verdict::BudgetExceeded { size: m },
                    bound_used: bound,
                    checked_up_to: m,
                }
            }
            Err(e) => unreachable!("family frames are well formed: {e}"),
        }
    }
    MembershipVerdict {
        verdict: Verdict::Valid,
        bound_used: bound,
        checked_up_to: checked,
    }
}

/// `phi <-> psi ∈ logic`, or an error if the check could not finish.
pub fn equivalent(logic: Logic, phi: &Formula, psi: &Formula) -> Result<bool, BudgetExceeded> {
    equivalent_with(logic, phi, psi, &MemberOptions::default())
}

pub fn equivalent_with(
    logic: Logic,
    phi: &Formula,
    psi: &Formula,
    opts: &MemberOptions,
) -> Result<bool, BudgetExceeded> {
    if phi == psi {
        return Ok(true);
    }
    let v = member_with(logic, &Formula::iff(phi.clone(), psi.clone()), opts);
    v.decided().ok_or(BudgetExceeded {
        logic,
        size: v.checked_up_to,
    })
}

/// Membership as a `Result`, for callers that only need the boolean.
pub fn is_theorem(
    logic: Logic,
    phi: &Formula,
    opts: &MemberOptions,
) -> Result<bool, BudgetExceeded> {
    let v = member_with(logic, phi, opts);
    v.decided().ok_or(BudgetExceeded {
        logic,
        size: v.checked_up_to,
    })
}
