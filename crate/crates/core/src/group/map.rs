use super::field::Matrix;
use super::spec::GroupSpec;
use crate::error::{ensure, Result};
use crate::sumset::ElementSequence;

/// A linear map of F_p^d, acting on column vectors: `x ↦ M·x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    spec: GroupSpec,
    matrix: Matrix,
    invertible: bool,
}

impl LinearMap {
    pub fn new(spec: GroupSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let d = spec.d();
        ensure!(rows.len() == d, Input, "a map of F_p^{d} needs {d} rows, got {}", rows.len());
        for r in rows {
            ensure!(r.len() == d, Input, "row {r:?} does not have {d} entries");
            ensure!(r.iter().all(|&c| c < spec.p()), Input, "row {r:?} has a residue out of range");
        }
        Ok(Self::from_matrix(spec, Matrix::from_rows(rows, d)))
    }

    fn from_matrix(spec: GroupSpec, matrix: Matrix) -> Self {
        let invertible = matrix.determinant(spec.field()) != 0;
        LinearMap { spec, matrix, invertible }
    }

    pub fn identity(spec: GroupSpec) -> Self {
        Self::from_matrix(spec, Matrix::identity(spec.d()))
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply_index(&self, x: usize) -> usize {
        let v = self.matrix.mul_vec(self.spec.field(), &self.spec.decode(x));
        self.spec.encode_unchecked(&v)
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        Self::from_matrix(self.spec, self.matrix.mul(self.spec.field(), &inner.matrix))
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        self.matrix.inverse(self.spec.field()).map(|m| Self::from_matrix(self.spec, m))
    }

    /// Lookup table `x ↦ Φ(x)` over the whole group.
    pub fn table(&self) -> Vec<usize> {
        self.spec.indices().map(|x| self.apply_index(x)).collect()
    }
}

/// Pointwise image of a sequence; multiplicities are preserved (and merged if
/// a singular map identifies points).
pub fn apply_map(map: &LinearMap, seq: &ElementSequence) -> ElementSequence {
    seq.map_indices(|x| map.apply_index(x))
}

/// As [`apply_map`], but refuses singular maps.
pub fn apply_invertible_map(map: &LinearMap, seq: &ElementSequence) -> Result<ElementSequence> {
    ensure!(map.is_invertible(), Domain, "the map is singular");
    Ok(apply_map(map, seq))
}

/// Every invertible `d × d` matrix over F_p, in lexicographic order of entries.
/// Intended for tiny groups: it enumerates all `p^(d²)` matrices.
pub fn general_linear_group(spec: GroupSpec) -> Result<Vec<LinearMap>> {
    let d = spec.d();
    let p = spec.p() as usize;
    let total = p.checked_pow((d * d) as u32).filter(|&t| t <= 1 << 22);
    let Some(total) = total else {
        return Err(crate::Error::Domain(format!("GL({d}, {p}) is too large to enumerate")));
    };
    let mut out = Vec::new();
    let mut entries = vec![0u32; d * d];
    for mut code in 0..total {
        for e in entries.iter_mut().rev() {
            *e = (code % p) as u32;
            code /= p;
        }
        let rows: Vec<Vec<u32>> = entries.chunks(d).map(|c| c.to_vec()).collect();
        let map = LinearMap::from_rows_unchecked(spec, &rows);
        if map.invertible {
            out.push(map);
        }
    }
    Ok(out)
}

impl LinearMap {
    fn from_rows_unchecked(spec: GroupSpec, rows: &[Vec<u32>]) -> Self {
        Self::from_matrix(spec, Matrix::from_rows(rows, spec.d()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_examples() {
        let s = GroupSpec::new(5, 2).unwrap();
        let seq = |pts: &[[u32; 2]]| {
            ElementSequence::from_indices(s, pts.iter().map(|c| s.encode(c).unwrap())).unwrap()
        };
        let a = seq(&[[1, 2], [3, 1], [3, 1]]);
        assert_eq!(apply_map(&LinearMap::identity(s), &a), a);

        let swap = LinearMap::new(s, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(apply_map(&swap, &seq(&[[1, 2]])), seq(&[[2, 1]]));

        let stretch = LinearMap::new(s, &[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(apply_map(&stretch, &seq(&[[1, 0], [3, 1]])), seq(&[[2, 0], [1, 1]]));

        let singular = LinearMap::new(s, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!singular.is_invertible());
        assert!(apply_invertible_map(&singular, &a).is_err());
        assert_eq!(apply_map(&singular, &a).len(), 3);
    }

    #[test]
    fn gl2_orders() {
        // |GL(2, p)| = (p² - 1)(p² - p)
        for p in [2u64, 3, 5, 7] {
            let s = GroupSpec::new(p, 2).unwrap();
            let g = general_linear_group(s).unwrap();
            assert_eq!(g.len() as u64, (p * p - 1) * (p * p - p));
        }
    }
}
