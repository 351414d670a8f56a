//! Permutations of strand labels in one-line image notation.
//!
//! `images[i - 1] = π(i)`: the strand that starts at position `i` ends at
//! position `π(i)`. Products are taken in diagram order, so `a.then(&b)` is
//! "first `a`, then `b`".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The adjacent transposition `(i, i+1)`.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "transposition index {i} out of range for {n}");
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// Diagram-order product: apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Permutation {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    /// Right-multiply by the adjacent transposition `(i, i+1)` acting on
    /// positions: whichever strands currently end at `i` and `i+1` trade places.
    pub fn then_swap(&mut self, i: usize) {
        for x in self.images.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }

    /// Strand sitting at each final position (`arrangement[p - 1]` is the
    /// strand that ends at position `p`).
    pub fn arrangement(&self) -> Vec<usize> {
        self.inverse().images
    }

    /// Every permutation of `n` points, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}
