use serde::{Deserialize, Serialize};

use crate::Permutation;

/// Multiplicities of cycle lengths: `alpha[i]` cycles of length `i` (index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    alpha: Vec<usize>,
}

impl CycleType {
    pub fn of(p: &Permutation) -> Self {
        let mut alpha = vec![0; p.degree() + 1];
        for len in p.cycle_lengths() {
            alpha[len] += 1;
        }
        CycleType { alpha }
    }

    /// From a list of cycle lengths (fixed points included as 1s).
    pub fn from_lengths(lengths: &[usize]) -> Self {
        let degree: usize = lengths.iter().sum();
        let mut alpha = vec![0; degree + 1];
        for &len in lengths {
            assert!(len > 0, "cycle length must be positive");
            alpha[len] += 1;
        }
        CycleType { alpha }
    }

    /// Number of cycles of length `i`.
    pub fn count(&self, i: usize) -> usize {
        self.alpha.get(i).copied().unwrap_or(0)
    }

    /// Largest cycle length present.
    pub fn max_length(&self) -> usize {
        self.alpha.iter().rposition(|&a| a > 0).unwrap_or(0)
    }

    /// `Σ i·αᵢ`
    pub fn degree(&self) -> usize {
        self.alpha.iter().enumerate().map(|(i, a)| i * a).sum()
    }

    /// `Σ αᵢ`
    pub fn sigma(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// A permutation with this cycle type, cycles on consecutive points, longest first.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut start = 0;
        for len in (1..self.alpha.len()).rev() {
            for _ in 0..self.alpha[len] {
                for j in 0..len {
                    images[start + j] = (start + (j + 1) % len) as u32;
                }
                start += len;
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

/// Number of cycles including fixed points.
pub fn sigma(p: &Permutation) -> usize {
    p.cycle_count()
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    CycleType::of(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&Permutation::identity(5)), 5);
        let p = Permutation::parse("(1 2 3)(4 5)", Some(6)).unwrap();
        assert_eq!(sigma(&p), 3);
        assert_eq!(sigma(&Permutation::parse("(1 2 3 4 5)", None).unwrap()), 1);
        let ct = cycle_type(&p);
        assert_eq!((ct.count(1), ct.count(2), ct.count(3)), (1, 1, 1));
        assert_eq!(ct.degree(), 6);
        assert_eq!(ct.sigma(), 3);
    }

    #[test]
    fn representative_has_the_type() {
        let ct = CycleType::from_lengths(&[3, 2, 2, 1]);
        assert_eq!(CycleType::of(&ct.representative()), ct);
        assert_eq!(ct.max_length(), 3);
    }
}
