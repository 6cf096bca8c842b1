use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of the vertex labels {0,1,2,3}; `images[i]` is the image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 4]", into = "[u8; 4]")]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 { images: [0, 1, 2, 3] };

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4 { images })
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for (i, img) in images.iter_mut().enumerate() {
            *img = self.images[other.images[i] as usize];
        }
        Perm4 { images }
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[self.images[i] as usize] = i as u8;
        }
        Perm4 { images }
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl TryFrom<[u8; 4]> for Perm4 {
    type Error = String;
    fn try_from(images: [u8; 4]) -> Result<Self, Self::Error> {
        Perm4::new(images).ok_or_else(|| format!("{images:?} is not a permutation of 0..3"))
    }
}

impl From<Perm4> for [u8; 4] {
    fn from(p: Perm4) -> [u8; 4] {
        p.images
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.images;
        write!(f, "Perm4({a}{b}{c}{d})")
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.images;
        write!(f, "{a}{b}{c}{d}")
    }
}
