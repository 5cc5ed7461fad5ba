//! Permutations of `{1, ..., d}`.
//!
//! Points are 0-based internally; every external format (cycle strings,
//! image arrays) is 1-based. Cycle decompositions list cycles by smallest
//! element and start each cycle at its smallest element, so output is
//! deterministic.

use std::fmt;

use crate::error::Error;
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// From 0-based images. Checks bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(
                    "images are not a bijection".into(),
                ));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, the JSON wire format.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self, Error> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("images must be 1-based".into()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// From disjoint cycles with 1-based entries; unmentioned points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, Error> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range 1..={degree}"
                    )));
                }
                if touched[x - 1] {
                    return Err(Error::InvalidPermutation("cycles are not disjoint".into()));
                }
                touched[x - 1] = true;
                let y = cycle[(i + 1) % cycle.len()];
                images[x - 1] = y - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition of the 0-based points `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate(&self, by: &Self) -> Self {
        by.compose(self).compose(&by.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycle decomposition, fixed points included. Cycles are listed by
    /// smallest element and each starts at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u64).collect())
            .expect("cycle lengths are positive")
    }

    /// Cycle notation with 1-based points, e.g. `(1 4)(2 5)(3 6)`.
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles() {
            s.push('(');
            for (i, &x) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&(x + 1).to_string());
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.to_cycle_string())
    }
}
