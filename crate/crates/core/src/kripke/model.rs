use super::{Compiled, Evaluator, Frame, KripkeError, World};
use crate::formula::Formula;
use crate::worldset::WorldSet;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// A frame with a valuation. Variables without an entry are false everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameModel {
    frame: Frame,
    valuation: BTreeMap<String, WorldSet>,
}

impl FrameModel {
    pub fn new(frame: Frame) -> FrameModel {
        FrameModel {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    /// Makes `var` true exactly at `worlds`.
    pub fn assign<I>(&mut self, var: impl Into<String>, worlds: I) -> Result<(), KripkeError>
    where
        I: IntoIterator<Item = World>,
    {
        let size = self.frame.size();
        let mut set = WorldSet::empty(size);
        for w in worlds {
            if w >= size {
                return Err(KripkeError::UnknownWorld { world: w, size });
            }
            set.insert(w);
        }
        self.valuation.insert(var.into(), set);
        Ok(())
    }

    pub fn with<I>(mut self, var: &str, worlds: I) -> Result<FrameModel, KripkeError>
    where
        I: IntoIterator<Item = World>,
    {
        self.assign(var, worlds)?;
        Ok(self)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    pub fn worlds_of(&self, var: &str) -> WorldSet {
        self.valuation
            .get(var)
            .cloned()
            .unwrap_or_else(|| WorldSet::empty(self.frame.size()))
    }

    pub(crate) fn sets_for(&self, c: &Compiled) -> Vec<WorldSet> {
        c.vars().iter().map(|v| self.worlds_of(v)).collect()
    }
}

/// The set of worlds where `phi` holds.
pub fn truth_set(model: &FrameModel, phi: &Formula) -> WorldSet {
    let c = Compiled::new(phi);
    let sets = model.sets_for(&c);
    Evaluator::new(&model.frame).truth_set(&c, &sets)
}

/// Truth of `phi` at `world`.
pub fn eval(model: &FrameModel, world: World, phi: &Formula) -> Result<bool, KripkeError> {
    let size = model.frame.size();
    if world >= size {
        return Err(KripkeError::UnknownWorld { world, size });
    }
    Ok(truth_set(model, phi).contains(world))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::make_frame;
    use crate::logic::Logic;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn diamond_reaches_the_top_of_y2() {
        let m = FrameModel::new(make_frame(Logic::Pm4, 2).unwrap())
            .with("p", [2])
            .unwrap();
        assert_eq!(eval(&m, 0, &p("<>p")), Ok(true));
        assert_eq!(eval(&m, 1, &p("<>p")), Ok(true));
    }

    #[test]
    fn t_holds_in_reflexive_models() {
        let m = FrameModel::new(make_frame(Logic::Pm3, 3).unwrap())
            .with("p", [0, 2, 4])
            .unwrap();
        assert!(truth_set(&m, &p("[]p -> p")).is_full());
    }

    #[test]
    fn box_or_box_not_fails_at_a_root_with_mixed_leaves() {
        // Root d = 0 of V_3; x holds at c = 1 but not at b = 2.
        let m = FrameModel::new(make_frame(Logic::Pm2, 3).unwrap())
            .with("x", [1, 3])
            .unwrap();
        assert_eq!(eval(&m, 0, &p("[]x | []~x")), Ok(false));
        assert_eq!(eval(&m, 1, &p("[]x | []~x")), Ok(true));
    }

    #[test]
    fn unknown_world_is_an_error() {
        let m = FrameModel::new(make_frame(Logic::Pm5, 2).unwrap());
        assert_eq!(
            eval(&m, 5, &Formula::Top),
            Err(KripkeError::UnknownWorld { world: 5, size: 2 })
        );
        let mut m = m;
        assert!(m.assign("p", [9]).is_err());
    }
}
