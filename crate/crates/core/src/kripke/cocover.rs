use super::{clusters, make_frame, Cluster, Frame, KripkeError, World};
use crate::logic::Logic;
use alloc::vec::Vec;

/// Adds a reflexive point below the cones of `antichain` (clusters of
/// `make_frame(logic, m)`) and asks whether the result is, up to
/// isomorphism, a point-generated subframe of some frame of the family.
pub fn has_weak_cocover_closure(
    logic: Logic,
    m: usize,
    antichain: &[Cluster],
) -> Result<bool, KripkeError> {
    let frame = make_frame(logic, m)?;
    if antichain.is_empty() {
        return Err(KripkeError::EmptyAntichain);
    }
    let actual = clusters(&frame);
    let mut members: Vec<&Cluster> = Vec::new();
    for c in antichain {
        if !actual.contains(c) {
            return Err(KripkeError::NotACluster);
        }
        if !members.contains(&c) {
            members.push(c);
        }
    }
    for (i, a) in members.iter().enumerate() {
        if frame.successors(a.representative()).is_full() {
            return Err(KripkeError::RootInAntichain);
        }
        for b in &members[i + 1..] {
            let (x, y) = (a.representative(), b.representative());
            if frame.related(x, y) || frame.related(y, x) {
                return Err(KripkeError::NotAntichain);
            }
        }
    }

    let roots: Vec<World> = members.iter().map(|c| c.representative()).collect();
    let (cone, _) = frame.generated_subframe(&roots);
    let n = cone.size();
    let extended = Frame::from_fn(n + 1, |x, y| {
        x == n || (y < n && x < n && cone.related(x, y))
    })
    .expect("co-cover of an up-closed set stays S4");

    for k in 1..=extended.size() + 1 {
        let host = make_frame(logic, k)?;
        if host.size() < extended.size() {
            continue;
        }
        for r in host.worlds() {
            if host.successors(r).count() != extended.size() {
                continue;
            }
            let (sub, _) = host.generated_subframe(&[r]);
            if is_isomorphic(&sub, &extended) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Backtracking isomorphism test for small frames.
pub fn is_isomorphic(a: &Frame, b: &Frame) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let sig = |f: &Frame, w: World| (f.successors(w).count(), f.predecessors(w).count());
    let mut sa: Vec<_> = a.worlds().map(|w| sig(a, w)).collect();
    let mut sb: Vec<_> = b.worlds().map(|w| sig(b, w)).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut map: Vec<Option<World>> = alloc::vec![None; a.size()];
    let mut used = alloc::vec![false; b.size()];
    extend(a, b, 0, &mut map, &mut used, &sig)
}

fn extend(
    a: &Frame,
    b: &Frame,
    x: World,
    map: &mut [Option<World>],
    used: &mut [bool],
    sig: &dyn Fn(&Frame, World) -> (usize, usize),
) -> bool {
    if x == a.size() {
        return true;
    }
    for y in b.worlds() {
        if used[y] || sig(a, x) != sig(b, y) {
            continue;
        }
        let consistent = (0..x).all(|u| {
            let v = map[u].expect("earlier worlds are mapped");
            a.related(u, x) == b.related(v, y) && a.related(x, u) == b.related(y, v)
        });
        if consistent && a.related(x, x) == b.related(y, y) {
            map[x] = Some(y);
            used[y] = true;
            if extend(a, b, x + 1, map, used, sig) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(w: World) -> Cluster {
        Cluster::new(alloc::vec![w])
    }

    #[test]
    fn v3_leaves() {
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm2, 3, &[single(1), single(2)]),
            Ok(true)
        );
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm2, 3, &[single(1)]),
            Ok(true)
        );
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm2, 3, &[]),
            Err(KripkeError::EmptyAntichain)
        );
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm2, 3, &[single(0)]),
            Err(KripkeError::RootInAntichain)
        );
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm1, 3, &[single(1), single(2)]),
            Err(KripkeError::NotAntichain)
        );
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm4, 3, &[single(1)]),
            Err(KripkeError::NotACluster)
        );
    }

    #[test]
    fn pm3_middles_and_top() {
        // Middles of U: the co-cover yields a smaller U frame.
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm3, 3, &[single(1), single(3)]),
            Ok(true)
        );
        // Below the top alone: a 2-chain, generated by a middle point.
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm3, 3, &[single(4)]),
            Ok(true)
        );
    }

    #[test]
    fn chains_and_clusters() {
        // A point below the tail of Z_3 is again a chain.
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm1, 3, &[single(2)]),
            Ok(true)
        );
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm4, 3, &[single(3)]),
            Ok(true)
        );
        assert_eq!(
            has_weak_cocover_closure(Logic::Pm5, 2, &[Cluster::new(alloc::vec![0, 1])]),
            Err(KripkeError::RootInAntichain)
        );
    }

    #[test]
    fn isomorphism() {
        let a = Frame::closure_of(3, &[(0, 1), (0, 2)]).unwrap();
        let b = Frame::closure_of(3, &[(2, 0), (2, 1)]).unwrap();
        let c = Frame::closure_of(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &c));
    }
}
