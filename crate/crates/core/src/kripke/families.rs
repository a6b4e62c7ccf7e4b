use super::{Frame, KripkeError};
use crate::logic::Logic;

/// The `m`-th frame of a logic's characteristic family.
///
/// | logic | worlds     | relation                                   |
/// |-------|------------|--------------------------------------------|
/// | PM1   | `0..m`     | `x <= y`                                   |
/// | PM2   | `0..=m`    | `x == 0 \|\| x == y`                       |
/// | PM3   | `0..=m+1`  | `x == 0 \|\| y == m+1 \|\| x == y`          |
/// | PM4   | `0..=m`    | `x <= m-1 \|\| y == m`                     |
/// | PM5   | `0..m`     | everything                                 |
pub fn make_frame(logic: Logic, m: usize) -> Result<Frame, KripkeError> {
    if m < 1 {
        return Err(KripkeError::SizeParameter(m));
    }
    let frame = match logic {
        Logic::Pm1 => Frame::from_fn(m, |x, y| x <= y),
        Logic::Pm2 => Frame::from_fn(m + 1, |x, y| x == 0 || x == y),
        Logic::Pm3 => Frame::from_fn(m + 2, |x, y| x == 0 || y == m + 1 || x == y),
        Logic::Pm4 => Frame::from_fn(m + 1, |x, y| x < m || y == m),
        Logic::Pm5 => Frame::from_fn(m, |_, _| true),
    };
    Ok(frame.expect("family relations are reflexive and transitive"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v3_shape() {
        let f = make_frame(Logic::Pm2, 3).unwrap();
        assert_eq!(f.size(), 4);
        assert!((0..4).all(|y| f.related(0, y)));
        for x in 1..4 {
            for y in 0..4 {
                assert_eq!(f.related(x, y), x == y);
            }
        }
    }

    #[test]
    fn y2_shape() {
        let f = make_frame(Logic::Pm4, 2).unwrap();
        assert_eq!(f.size(), 3);
        assert!(f.related(0, 1) && f.related(1, 0));
        assert!(f.related(0, 2) && f.related(1, 2));
        assert!(!f.related(2, 0) && !f.related(2, 1));
    }

    #[test]
    fn sizes_and_errors() {
        assert_eq!(make_frame(Logic::Pm5, 1).unwrap().size(), 1);
        assert_eq!(make_frame(Logic::Pm3, 4).unwrap().size(), 6);
        assert_eq!(make_frame(Logic::Pm1, 4).unwrap().size(), 4);
        for l in Logic::ALL {
            assert_eq!(make_frame(l, 0), Err(KripkeError::SizeParameter(0)));
        }
    }

    #[test]
    fn every_family_frame_is_s4_up_to_8() {
        // from_fn validates; reaching here for all sizes is the check.
        for l in Logic::ALL {
            for m in 1..=8 {
                let f = make_frame(l, m).unwrap();
                for x in f.worlds() {
                    assert!(f.related(x, x));
                }
            }
        }
    }
}
