//! Integer partitions and the small counting quantities attached to them.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;

/// A partition: weakly decreasing positive integer parts.
///
/// Ramification profiles are partitions; constructors sort their input so
/// callers may pass parts in any order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts in any order. Rejects zero parts.
    pub fn new(mut parts: Vec<u64>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The empty partition (of 0).
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Order of the automorphism group: the product over distinct part values
    /// of (multiplicity)!. Computed from multiplicities, never by search.
    pub fn aut_order(&self) -> u64 {
        let mut order = 1u64;
        let mut run = 0u64;
        for i in 0..self.parts.len() {
            run += 1;
            if i + 1 == self.parts.len() || self.parts[i + 1] != self.parts[i] {
                order *= factorial(run);
                run = 0;
            }
        }
        order
    }

    /// The partition of `2n` obtained by repeating every part twice.
    pub fn doubled(&self) -> Partition {
        let mut parts = Vec::with_capacity(2 * self.parts.len());
        for &p in &self.parts {
            parts.push(p);
            parts.push(p);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// All partitions of `n`, in deterministic (descending lexicographic) order.
    pub fn all_of(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u64, max: u64, current: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            let hi = remaining.min(max);
            for p in (1..=hi).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn factorial(k: u64) -> u64 {
    (2..=k).product::<u64>().max(1)
}

/// Double factorial `k!! = k (k-2) (k-4) ...` for even `k`; `0!! = 1`.
pub fn double_factorial(k: u64) -> Result<BigUint, Error> {
    if !k.is_multiple_of(2) {
        return Err(Error::Invalid(format!("double factorial of odd {k}")));
    }
    let mut acc = BigUint::one();
    let mut i = 2u64;
    while i <= k {
        acc *= BigUint::from(i);
        i += 2;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_rejects_zero() {
        let p = Partition::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.size(), 6);
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn aut_orders() {
        assert_eq!(Partition::new(vec![2, 1]).unwrap().aut_order(), 1);
        assert_eq!(Partition::new(vec![2, 2]).unwrap().aut_order(), 2);
        assert_eq!(Partition::new(vec![1, 1, 1, 1]).unwrap().aut_order(), 24);
        assert_eq!(Partition::new(vec![3, 3, 2, 2, 2]).unwrap().aut_order(), 12);
    }

    #[test]
    fn doubling() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.doubled().parts(), &[2, 2, 1, 1]);
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(0).unwrap(), BigUint::from(1u32));
        assert_eq!(double_factorial(6).unwrap(), BigUint::from(48u32));
        assert_eq!(double_factorial(8).unwrap(), BigUint::from(384u32));
        assert!(double_factorial(5).is_err());
    }

    #[test]
    fn partitions_of_five() {
        let all = Partition::all_of(5);
        assert_eq!(all.len(), 7);
        assert!(all.iter().all(|p| p.size() == 5));
        // deterministic order, (5) first, (1,1,1,1,1) last
        assert_eq!(all[0].parts(), &[5]);
        assert_eq!(all[6].parts(), &[1, 1, 1, 1, 1]);
    }
}
