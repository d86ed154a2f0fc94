use std::fmt;

use crate::spin::HamiltonianParams;

/// Sign pattern of `(J, K, Δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// `sgn J = sgn K = sgn Δ`.
    Region1,
    /// `sgn K = sgn J ≠ sgn Δ`.
    Region2,
    /// `sgn K = sgn Δ ≠ sgn J`.
    Region3,
    /// `sgn Δ = sgn J ≠ sgn K`.
    Region4,
    /// At least one of `J`, `K`, `Δ` is zero.
    Boundary,
}

impl RegionLabel {
    pub fn number(self) -> Option<u8> {
        match self {
            RegionLabel::Region1 => Some(1),
            RegionLabel::Region2 => Some(2),
            RegionLabel::Region3 => Some(3),
            RegionLabel::Region4 => Some(4),
            RegionLabel::Boundary => None,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(n) => write!(f, "region {n}"),
            None => f.write_str("boundary"),
        }
    }
}

pub fn classify_region(p: &HamiltonianParams) -> RegionLabel {
    if p.j == 0.0 || p.k == 0.0 || p.delta == 0.0 {
        return RegionLabel::Boundary;
    }
    let (j, k, d) = (p.j > 0.0, p.k > 0.0, p.delta > 0.0);
    // With three signs, J ≠ K and K ≠ Δ forces Δ = J.
    match (j == k, k == d) {
        (true, true) => RegionLabel::Region1,
        (true, false) => RegionLabel::Region2,
        (false, true) => RegionLabel::Region3,
        (false, false) => RegionLabel::Region4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(j: f64, k: f64, d: f64) -> RegionLabel {
        classify_region(&HamiltonianParams::new(j, k, d, 0.0))
    }

    #[test]
    fn examples() {
        assert_eq!(label(-1.0, -1.0, -1.0), RegionLabel::Region1);
        assert_eq!(label(-1.0, 1.0, 1.0), RegionLabel::Region3);
        assert_eq!(label(-1.0, 0.0, 1.0), RegionLabel::Boundary);
        assert_eq!(label(-1.0, -2.0, 0.5), RegionLabel::Region2);
        assert_eq!(label(-1.0, 2.0, -0.5), RegionLabel::Region4);
    }

    #[test]
    fn every_sign_pattern_gets_one_region() {
        let signs = [-1.0, 1.0];
        let mut counts = [0usize; 4];
        for &j in &signs {
            for &k in &signs {
                for &d in &signs {
                    let n = label(j, k, d).number().unwrap();
                    counts[(n - 1) as usize] += 1;
                    // Flipping all signs keeps the region.
                    assert_eq!(label(j, k, d), label(-j, -k, -d));
                }
            }
        }
        assert_eq!(counts, [2, 2, 2, 2]);
        assert_eq!(label(0.0, 1.0, 1.0), RegionLabel::Boundary);
        assert_eq!(label(1.0, 1.0, 0.0), RegionLabel::Boundary);
    }
}
