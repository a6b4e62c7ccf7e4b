//! Frame validity by refutation search over valuations.
//!
//! Worlds that can be swapped by an automorphism are grouped into twin
//! classes, and only valuations whose per-world codes are sorted within each
//! class are visited. Every valuation is an automorphic image of one of
//! these, so validity is unaffected.

use super::{Compiled, Evaluator, Frame, FrameModel, KripkeError, World};
use crate::formula::Formula;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of valuations evaluated before giving up.
    pub max_valuations: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_valuations: 20_000_000,
        }
    }
}

/// A valuation together with a world where the formula fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterModel {
    pub world: World,
    pub model: FrameModel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameVerdict {
    Valid,
    Refuted(CounterModel),
}

impl FrameVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameVerdict::Valid)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchOptions {
    /// Use twin classes at all.
    pub symmetry: bool,
    /// Require pairwise distinct codes within a twin class.
    pub distinct_twins: bool,
    pub max_valuations: u64,
}

pub(crate) struct Refutation {
    pub world: World,
    pub codes: Vec<u64>,
}

/// Walks the valuations of a frame in canonical order, one code per world.
pub(crate) struct ValuationCursor {
    order: Vec<World>,
    odo: Odometer,
    codes: Vec<u64>,
}

impl ValuationCursor {
    /// `None` when the constraints admit no valuation at all.
    pub fn new(frame: &Frame, vars: usize, symmetry: bool, distinct_twins: bool) -> Option<Self> {
        let classes = if symmetry {
            frame.twin_classes()
        } else {
            frame.worlds().map(|w| alloc::vec![w]).collect()
        };
        let mut order = Vec::with_capacity(frame.size());
        let mut class_head = Vec::with_capacity(frame.size());
        for class in &classes {
            for (i, &w) in class.iter().enumerate() {
                order.push(w);
                class_head.push(i == 0);
            }
        }
        let mut odo = Odometer {
            cur: alloc::vec![0; order.len()],
            class_head,
            ncodes: 1u64 << vars,
            step: u64::from(distinct_twins),
        };
        if !odo.fill_from(0) {
            return None;
        }
        let mut cursor = ValuationCursor {
            order,
            odo,
            codes: alloc::vec![0; frame.size()],
        };
        cursor.sync();
        Some(cursor)
    }

    fn sync(&mut self) {
        for (pos, &w) in self.order.iter().enumerate() {
            self.codes[w] = self.odo.cur[pos];
        }
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn advance(&mut self) -> bool {
        let moved = self.odo.advance();
        if moved {
            self.sync();
        }
        moved
    }
}

/// `Ok(None)` when no visited valuation refutes the formula. `spent` counts
/// evaluated valuations across calls and is checked against the limit.
pub(crate) fn refute_on_frame(
    frame: &Frame,
    c: &Compiled,
    opts: SearchOptions,
    spent: &mut u64,
) -> Result<Option<Refutation>, KripkeError> {
    let n = c.vars().len();
    if n >= 64 {
        return Err(KripkeError::BudgetExceeded { valuations: 0 });
    }
    let Some(mut cursor) = ValuationCursor::new(frame, n, opts.symmetry, opts.distinct_twins)
    else {
        return Ok(None);
    };
    let mut ev = Evaluator::new(frame);
    loop {
        if *spent >= opts.max_valuations {
            return Err(KripkeError::BudgetExceeded { valuations: *spent });
        }
        *spent += 1;
        let mut truth = ev.truth_set_codes(c, cursor.codes());
        if !truth.is_full() {
            truth.complement();
            let world = truth.first().expect("some world fails");
            return Ok(Some(Refutation {
                world,
                codes: cursor.codes().to_vec(),
            }));
        }
        if !cursor.advance() {
            return Ok(None);
        }
    }
}

struct Odometer {
    cur: Vec<u64>,
    class_head: Vec<bool>,
    ncodes: u64,
    step: u64,
}

impl Odometer {
    fn lower_bound(&self, pos: usize) -> u64 {
        if self.class_head[pos] {
            0
        } else {
            self.cur[pos - 1] + self.step
        }
    }

    fn fill_from(&mut self, start: usize) -> bool {
        for pos in start..self.cur.len() {
            let lo = self.lower_bound(pos);
            if lo >= self.ncodes {
                return false;
            }
            self.cur[pos] = lo;
        }
        true
    }

    fn advance(&mut self) -> bool {
        let mut pos = self.cur.len();
        while pos > 0 {
            pos -= 1;
            if self.cur[pos] + 1 < self.ncodes {
                self.cur[pos] += 1;
                if self.fill_from(pos + 1) {
                    return true;
                }
            }
        }
        false
    }
}

pub(crate) fn counter_model(frame: &Frame, c: &Compiled, r: &Refutation) -> CounterModel {
    let mut model = FrameModel::new(frame.clone());
    for (i, var) in c.vars().iter().enumerate() {
        model
            .assign(
                var.clone(),
                frame.worlds().filter(|&w| r.codes[w] >> i & 1 == 1),
            )
            .expect("worlds come from the frame");
    }
    CounterModel {
        world: r.world,
        model,
    }
}

/// Whether `phi` holds at every world of `frame` under every valuation.
/// A refutation names the lowest failing world of the first refuting
/// valuation found.
pub fn valid_on_frame(
    frame: &Frame,
    phi: &Formula,
    limits: SearchLimits,
) -> Result<FrameVerdict, KripkeError> {
    let c = Compiled::new(phi);
    let opts = SearchOptions {
        symmetry: true,
        distinct_twins: false,
        max_valuations: limits.max_valuations,
    };
    Ok(match refute_on_frame(frame, &c, opts, &mut 0)? {
        None => FrameVerdict::Valid,
        Some(r) => FrameVerdict::Refuted(counter_model(frame, &c, &r)),
    })
}

/// Plain enumeration of all `2^(|W|·n)` valuations, without symmetry
/// reduction or budget. Intended as a test oracle on small inputs.
pub fn valid_on_frame_exhaustive(frame: &Frame, phi: &Formula) -> FrameVerdict {
    let c = Compiled::new(phi);
    let opts = SearchOptions {
        symmetry: false,
        distinct_twins: false,
        max_valuations: u64::MAX,
    };
    match refute_on_frame(frame, &c, opts, &mut 0).expect("unbounded search") {
        None => FrameVerdict::Valid,
        Some(r) => FrameVerdict::Refuted(counter_model(frame, &c, &r)),
    }
}
