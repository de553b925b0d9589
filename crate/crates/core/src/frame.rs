//! Frames of discernment and focal sets encoded as bitmasks.

use std::fmt;

use crate::error::{Error, Result};

/// Largest frame a [`Frame`] may hold; subsets of it fit comfortably in a word.
pub const MAX_ATOMS: usize = 16;

/// An ordered set of mutually exclusive atoms. Bit `i` of a [`FocalSet`]
/// refers to `atoms[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    atoms: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::InvalidFrame("a frame needs at least one atom".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidFrame(format!(
                "{} atoms exceeds the limit of {MAX_ATOMS}",
                atoms.len()
            )));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidFrame(format!("atom {i} has an empty label")));
            }
            if atoms[..i].contains(a) {
                return Err(Error::InvalidFrame(format!("atom label {a:?} repeated")));
            }
        }
        Ok(Self { atoms })
    }

    /// Frame with atoms `a1 .. an`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("a{i}")))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    /// The focal set containing every atom.
    pub fn full(&self) -> FocalSet {
        FocalSet::full(self.len())
    }

    pub fn contains(&self, set: FocalSet) -> bool {
        set.0 & !self.full().0 == 0
    }

    /// Resolve a list of atom labels into a focal set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<FocalSet> {
        let mut mask = 0u64;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::InvalidFrame(format!("unknown atom {l:?}")))?;
            mask |= 1 << i;
        }
        Ok(FocalSet(mask))
    }

    pub fn labels_of(&self, set: FocalSet) -> Vec<&str> {
        set.atoms().map(|i| self.atoms[i].as_str()).collect()
    }

    /// Iterate over every non-empty subset of the frame, in mask order.
    pub fn subsets(&self) -> impl Iterator<Item = FocalSet> {
        (1..=self.full().0).map(FocalSet)
    }
}

/// A subset of a frame; bit `i` set means atom `i` is present.
///
/// Stored in 64 bits so the same kernel can evaluate singleton-only vectors
/// of up to 64 atoms, even though [`Frame`] itself stops at [`MAX_ATOMS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FocalSet(pub u64);

impl FocalSet {
    pub const EMPTY: FocalSet = FocalSet(0);

    pub fn singleton(i: usize) -> Self {
        FocalSet(1 << i)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            FocalSet(u64::MAX)
        } else {
            FocalSet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_singleton(self) -> bool {
        self.len() == 1
    }

    pub fn contains_atom(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn intersection(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }

    pub fn union(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// |A ∩ B| / |A ∪ B|, zero when either set is empty.
    pub fn jaccard(self, other: FocalSet) -> f64 {
        let union = self.union(other).len();
        if union == 0 {
            return 0.0;
        }
        f64::from(self.intersection(other).len()) / f64::from(union)
    }

    /// Indices of the atoms present, ascending.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }
}

impl fmt::Display for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.atoms().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_rejects_bad_labels() {
        assert!(Frame::new(Vec::<String>::new()).is_err());
        assert!(Frame::new(["a", "a"]).is_err());
        assert!(Frame::new(["a", ""]).is_err());
        assert!(Frame::numbered(17).is_err());
        assert_eq!(Frame::numbered(16).unwrap().len(), 16);
    }

    #[test]
    fn set_ops() {
        let a = FocalSet(0b011);
        let b = FocalSet(0b110);
        assert_eq!(a.intersection(b), FocalSet(0b010));
        assert_eq!(a.union(b), FocalSet(0b111));
        assert_eq!(a.jaccard(b), 1.0 / 3.0);
        assert_eq!(a.jaccard(a), 1.0);
        assert_eq!(FocalSet(1).jaccard(FocalSet(2)), 0.0);
        assert_eq!(FocalSet(0b1011).atoms().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(FocalSet::full(64).len(), 64);
    }

    #[test]
    fn labels_round_trip() {
        let f = Frame::new(["x", "y", "z"]).unwrap();
        let s = f.set_of(&["z", "x"]).unwrap();
        assert_eq!(s, FocalSet(0b101));
        assert_eq!(f.labels_of(s), vec!["x", "z"]);
        assert!(f.set_of(&["w"]).is_err());
        assert!(f.contains(f.full()));
        assert!(!f.contains(FocalSet(0b1000)));
        assert_eq!(f.subsets().count(), 7);
    }
}
