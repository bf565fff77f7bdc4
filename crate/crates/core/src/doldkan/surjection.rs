//! Monotone surjections `[q] ↠ [k]`, encoded by the positions where they step up.

/// A monotone surjection `σ: [q] ↠ [k]`. Bit `i − 1` of `jumps` is set iff
/// `σ(i) = σ(i − 1) + 1`; the number of set bits is `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    pub q: usize,
    pub jumps: u64,
}

/// `σ ∘ δ^j` factored through the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceImage {
    /// Still surjective onto `[k]`.
    Same(Surjection),
    /// Misses `0`: equals `δ^0 ∘ τ` with `τ: [q−1] ↠ [k−1]`.
    MissesZero(Surjection),
    /// Misses some `v > 0`.
    Zero,
}

fn full(q: usize) -> u64 {
    if q == 0 {
        0
    } else {
        u64::MAX >> (64 - q)
    }
}

impl Surjection {
    pub fn identity(q: usize) -> Self {
        assert!(q < 64, "simplicial degree too large");
        Surjection { q, jumps: full(q) }
    }

    pub fn target(&self) -> usize {
        self.jumps.count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.jumps == full(self.q)
    }

    /// Positions `i ∈ {1..q}` with `σ(i) = σ(i−1)`, as a bitmask.
    pub fn repeats(&self) -> u64 {
        !self.jumps & full(self.q)
    }

    pub fn values(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.q + 1);
        let mut c = 0;
        v.push(0);
        for i in 1..=self.q {
            if self.jumps >> (i - 1) & 1 == 1 {
                c += 1;
            }
            v.push(c);
        }
        v
    }

    /// `None` unless `vals` is monotone, starts at 0 and has unit steps.
    pub fn from_values(vals: &[usize]) -> Option<Self> {
        if vals.first() != Some(&0) {
            return None;
        }
        let mut jumps = 0u64;
        for i in 1..vals.len() {
            match vals[i].checked_sub(vals[i - 1]) {
                Some(0) => {}
                Some(1) => jumps |= 1 << (i - 1),
                _ => return None,
            }
        }
        Some(Surjection { q: vals.len() - 1, jumps })
    }

    /// All surjections `[q] ↠ [k]` in increasing `jumps` order.
    pub fn all(q: usize, k: usize) -> Vec<Surjection> {
        assert!(q < 32, "simplicial degree too large for enumeration");
        if k > q {
            return vec![];
        }
        (0..1u64 << q).filter(|m| m.count_ones() as usize == k).map(|jumps| Surjection { q, jumps }).collect()
    }

    /// `σ ∘ δ^j` for the coface `δ^j: [q−1] → [q]` skipping `j`.
    pub fn face(&self, j: usize) -> FaceImage {
        debug_assert!(self.q >= 1 && j <= self.q);
        let v = self.values();
        let vals: Vec<usize> = (0..self.q).map(|i| if i < j { v[i] } else { v[i + 1] }).collect();
        let k = self.target();
        if vals[0] == 1 {
            let shifted: Vec<usize> = vals.iter().map(|x| x - 1).collect();
            return match Surjection::from_values(&shifted) {
                Some(t) if t.target() == k - 1 => FaceImage::MissesZero(t),
                _ => FaceImage::Zero,
            };
        }
        match Surjection::from_values(&vals) {
            Some(t) if t.target() == k => FaceImage::Same(t),
            _ => FaceImage::Zero,
        }
    }

    /// `σ ∘ σ^j` for the codegeneracy `σ^j: [q+1] ↠ [q]` repeating `j`.
    pub fn degeneracy(&self, j: usize) -> Surjection {
        debug_assert!(j <= self.q);
        let v = self.values();
        let vals: Vec<usize> = (0..=self.q + 1).map(|i| if i <= j { v[i] } else { v[i - 1] }).collect();
        Surjection::from_values(&vals).expect("composite of surjections")
    }
}

/// `C(n, k)` as `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for q in 0..8 {
            for k in 0..=q {
                assert_eq!(Surjection::all(q, k).len(), binomial(q, k));
            }
        }
    }

    #[test]
    fn faces_of_identity() {
        let id = Surjection::identity(3);
        assert_eq!(id.face(0), FaceImage::MissesZero(Surjection::identity(2)));
        for j in 1..=3 {
            assert_eq!(id.face(j), FaceImage::Zero);
        }
        let s = id.degeneracy(1);
        assert_eq!(s.values(), vec![0, 1, 1, 2, 3]);
        assert_eq!(s.face(1), FaceImage::Same(id));
        assert_eq!(s.face(2), FaceImage::Same(id));
    }
}
