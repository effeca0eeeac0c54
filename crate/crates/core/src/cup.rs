//! Closure under permutation.
//!
//! A set `F` is c.u.p. iff it is a union of whole basis classes: for every
//! histogram `h` that occurs in `F`, all `multinomial(h)` functions with that
//! histogram are members.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::combinatorics::{multinomial, BigCount};
use crate::error::{Error, Result};
use crate::space::{histogram_of, orbit, Caps, FunctionSet, Histogram};

/// Outcome of the c.u.p. test, keeping the empty set distinguishable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CupStatus {
    Closed,
    NotClosed,
    /// The empty set, closed vacuously.
    Vacuous,
}

impl CupStatus {
    pub fn is_closed(self) -> bool {
        !matches!(self, CupStatus::NotClosed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Complete,
    Partial { members: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisClass {
    pub histogram: Histogram,
    pub class_size: BigCount,
    pub membership: Membership,
}

impl BasisClass {
    pub fn member_count(&self) -> BigCount {
        match self.membership {
            Membership::Complete => self.class_size.clone(),
            Membership::Partial { members } => BigUint::from(members),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.membership == Membership::Complete
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let state = if self.is_complete() { "complete" } else { "partial" };
        write!(
            f,
            "class {} {} {}/{}",
            self.histogram,
            state,
            self.member_count(),
            self.class_size
        )
    }
}

/// `F` split into `F_h = B_h ∩ F`, one entry per occurring histogram, in
/// histogram order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisDecomposition {
    pub classes: Vec<BasisClass>,
    /// `true` iff no class is partial, i.e. `F` is exactly the union of its
    /// complete classes.
    pub residual_is_empty: bool,
}

impl BasisDecomposition {
    pub fn complete_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_complete()).count()
    }

    pub fn status(&self) -> CupStatus {
        if self.classes.is_empty() {
            CupStatus::Vacuous
        } else if self.residual_is_empty {
            CupStatus::Closed
        } else {
            CupStatus::NotClosed
        }
    }
}

fn group_by_histogram(set: &FunctionSet) -> BTreeMap<Histogram, usize> {
    let mut groups = BTreeMap::new();
    for f in set {
        *groups.entry(histogram_of(f)).or_insert(0) += 1;
    }
    groups
}

pub fn decompose(set: &FunctionSet) -> BasisDecomposition {
    let classes: Vec<BasisClass> = group_by_histogram(set)
        .into_iter()
        .map(|(histogram, members)| {
            let class_size = multinomial(&histogram);
            let membership = if BigUint::from(members) == class_size {
                Membership::Complete
            } else {
                Membership::Partial { members }
            };
            BasisClass {
                histogram,
                class_size,
                membership,
            }
        })
        .collect();
    let residual_is_empty = classes.iter().all(BasisClass::is_complete);
    BasisDecomposition {
        classes,
        residual_is_empty,
    }
}

pub fn cup_status(set: &FunctionSet) -> CupStatus {
    if set.is_empty() {
        return CupStatus::Vacuous;
    }
    let closed = group_by_histogram(set)
        .iter()
        .all(|(h, &members)| BigUint::from(members) == multinomial(h));
    if closed {
        CupStatus::Closed
    } else {
        CupStatus::NotClosed
    }
}

/// `true` iff `set` is closed under permutation (the empty set counts as closed).
pub fn is_cup(set: &FunctionSet) -> bool {
    cup_status(set).is_closed()
}

/// The smallest c.u.p. superset: the union of the members' orbits.
pub fn closure(set: &FunctionSet, caps: &Caps) -> Result<FunctionSet> {
    let groups = group_by_histogram(set);
    let total: BigUint = groups.keys().map(multinomial).sum();
    if total > BigUint::from(caps.max_functions) {
        return Err(Error::capacity("closure size", total, caps.max_functions));
    }
    let mut closed = FunctionSet::empty(set.signature());
    for h in groups.keys() {
        closed.union_with(&orbit(&h.representative(), caps)?)?;
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{compose, enumerate_functions, FiniteFunction, Permutation, SpaceSignature};

    fn sig(x: usize, y: usize) -> SpaceSignature {
        SpaceSignature::new(x, y).unwrap()
    }

    fn set(s: SpaceSignature, arrays: &[&[usize]]) -> FunctionSet {
        FunctionSet::from_value_arrays(s, arrays.iter().map(|a| a.to_vec())).unwrap()
    }

    /// Oracle: closure under adjacent transpositions, iterated to a fixpoint.
    fn closed_under_transpositions(s: &FunctionSet) -> bool {
        let n = s.signature().domain_size();
        let gens: Vec<Permutation> = (0..n.saturating_sub(1))
            .map(|i| Permutation::transposition(n, i, i + 1).unwrap())
            .collect();
        let mut current = s.clone();
        loop {
            let mut next = current.clone();
            for f in &current {
                for g in &gens {
                    next.insert(compose(f, g).unwrap()).unwrap();
                }
            }
            if next.len() == current.len() {
                return current.len() == s.len();
            }
            current = next;
        }
    }

    fn subsets(space: &[FiniteFunction], s: SpaceSignature) -> impl Iterator<Item = FunctionSet> + '_ {
        (1u32..(1 << space.len())).map(move |mask| {
            FunctionSet::from_functions(
                s,
                space
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, f)| f.clone()),
            )
            .unwrap()
        })
    }

    #[test]
    fn is_cup_examples() {
        let caps = Caps::default();
        assert!(is_cup(&FunctionSet::full(sig(2, 2), &caps).unwrap()));
        assert!(!is_cup(&set(sig(2, 2), &[&[0, 1]])));
        assert!(is_cup(&set(sig(2, 2), &[&[0, 0], &[1, 1]])));
        let empty = FunctionSet::empty(sig(2, 2));
        assert_eq!(cup_status(&empty), CupStatus::Vacuous);
        assert!(is_cup(&empty));
    }

    #[test]
    fn closure_examples() {
        let caps = Caps::default();
        assert_eq!(
            closure(&set(sig(2, 2), &[&[0, 1]]), &caps).unwrap(),
            set(sig(2, 2), &[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            closure(&set(sig(2, 2), &[&[0, 0]]), &caps).unwrap(),
            set(sig(2, 2), &[&[0, 0]])
        );
        assert_eq!(closure(&set(sig(3, 2), &[&[0, 0, 1]]), &caps).unwrap().len(), 3);
    }

    #[test]
    fn closure_cap() {
        let f = FiniteFunction::from_values(10, (0..10).collect()).unwrap();
        let s = FunctionSet::from_functions(f.signature(), [f]).unwrap();
        let caps = Caps::default().with_max_functions(100);
        assert!(closure(&s, &caps).unwrap_err().is_capacity());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&set(sig(2, 2), &[&[0, 0], &[0, 1], &[1, 0]]));
        assert_eq!(d.classes.len(), 2);
        assert_eq!(d.classes[0].histogram.counts(), &[2, 0]);
        assert_eq!(d.classes[1].histogram.counts(), &[1, 1]);
        assert!(d.classes.iter().all(BasisClass::is_complete));
        assert_eq!(d.status(), CupStatus::Closed);

        let d = decompose(&set(sig(2, 2), &[&[0, 0], &[0, 1]]));
        assert_eq!(d.classes[1].membership, Membership::Partial { members: 1 });
        assert_eq!(d.classes[1].class_size, BigUint::from(2u8));
        assert_eq!(d.classes[1].to_string(), "class [1,1] partial 1/2");
        assert_eq!(d.status(), CupStatus::NotClosed);

        let d = decompose(&FunctionSet::full(sig(2, 2), &Caps::default()).unwrap());
        assert_eq!(d.complete_count(), 3);
    }

    #[test]
    fn criterion_matches_generator_oracle() {
        let caps = Caps::default();
        for s in [sig(3, 2), sig(2, 3)] {
            let space: Vec<FiniteFunction> = enumerate_functions(s, &caps).unwrap().collect();
            for subset in subsets(&space, s) {
                let closed = is_cup(&subset);
                assert_eq!(closed, closed_under_transpositions(&subset), "{subset:?}");
                assert_eq!(closed, decompose(&subset).residual_is_empty);
                let c = closure(&subset, &caps).unwrap();
                assert_eq!(closed, c == subset);
                assert!(subset.is_subset(&c));
                assert!(is_cup(&c));
                assert_eq!(closure(&c, &caps).unwrap(), c);
            }
        }
    }
}
