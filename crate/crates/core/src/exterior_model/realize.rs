use num_traits::{One, Zero};

use super::ExteriorError;
use crate::diagram_cat::{Diagram, GeneratorTable, Morphism, Word};
use crate::exact_linalg::{int, RationalMatrix, Scalar};

/// Super vector space assigned to one generator, with the evaluation pairing
/// `C` on `N ⊗ N^∨` and its inverse `D` used for coevaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpace {
    pub dim: usize,
    pub odd: bool,
    pub cap: RationalMatrix,
    pub cup: RationalMatrix,
}

impl GeneratorSpace {
    pub fn new(dim: usize, odd: bool, cap: RationalMatrix) -> Result<Self, ExteriorError> {
        if cap.rows() != dim || cap.cols() != dim {
            return Err(ExteriorError::Mismatch("pairing matrix has the wrong size".into()));
        }
        let cup = cap
            .inverse()
            .ok_or_else(|| ExteriorError::Mismatch("pairing matrix is singular".into()))?;
        Ok(GeneratorSpace { dim, odd, cap, cup })
    }

    pub fn superdim(&self) -> i64 {
        if self.odd {
            -(self.dim as i64)
        } else {
            self.dim as i64
        }
    }

    fn s(&self) -> Scalar {
        if self.odd {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    }
}

/// Symmetric monoidal functor from the diagram category to super vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub spaces: Vec<GeneratorSpace>,
}

/// Linear map between realized spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedMap {
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    pub matrix: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceLabel {
    Tensor(Word),
    Exterior { m: usize, degree: usize },
}

/// Matrix of the standard symplectic form `ω(e_i, f_i) = 1` in the basis `e_1..e_g, f_1..f_g`.
pub fn omega_matrix(g: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        m.set(i, g + i, int(1));
        m.set(g + i, i, int(-1));
    }
    m
}

impl Realization {
    /// `N ↦ ℚ^{|r|}` with parity odd for negative rank and identity pairing.
    pub fn standard(table: &GeneratorTable) -> Self {
        let spaces = table
            .iter()
            .map(|g| {
                let n = g.rank.unsigned_abs() as usize;
                GeneratorSpace::new(n, g.rank < 0, RationalMatrix::identity(n)).expect("identity is invertible")
            })
            .collect();
        Realization { spaces }
    }

    /// Single generator of rank `−2g` realized on the odd symplectic space with pairing `ω`.
    pub fn symplectic(g: usize) -> Self {
        let space = GeneratorSpace::new(2 * g, true, omega_matrix(g)).expect("ω is invertible");
        Realization { spaces: vec![space] }
    }

    fn space(&self, gen: usize) -> Result<&GeneratorSpace, ExteriorError> {
        self.spaces
            .get(gen)
            .ok_or_else(|| ExteriorError::Mismatch(format!("generator {gen} has no realization")))
    }

    pub fn word_dims(&self, w: &Word) -> Result<Vec<usize>, ExteriorError> {
        w.0.iter().map(|l| self.space(l.gen).map(|s| s.dim)).collect()
    }

    pub fn word_dim(&self, w: &Word) -> Result<usize, ExteriorError> {
        Ok(self.word_dims(w)?.iter().product())
    }

    fn odd_count(&self, w: &Word) -> Result<usize, ExteriorError> {
        let mut k = 0;
        for l in &w.0 {
            if self.space(l.gen)?.odd {
                k += 1;
            }
        }
        Ok(k)
    }

    /// Supertrace `(−1)^{#odd letters} · trace` of an endomorphism of a realized word.
    pub fn supertrace(&self, w: &Word, m: &RationalMatrix) -> Result<Scalar, ExteriorError> {
        let t = m.trace();
        Ok(if self.odd_count(w)? % 2 == 1 { -t } else { t })
    }

    fn cap_value(&self, d: &Diagram, a: usize, ia: usize, ib: usize) -> Result<Scalar, ExteriorError> {
        let la = d.src.0[a];
        let sp = self.space(la.gen)?;
        Ok(if !la.dual {
            sp.cap.get(ia, ib)
        } else {
            sp.s() * sp.cap.get(ib, ia)
        })
    }

    fn cup_entries(&self, d: &Diagram, a: usize) -> Result<Vec<(usize, usize, Scalar)>, ExteriorError> {
        let la = d.dst.0[a];
        let sp = self.space(la.gen)?;
        let mut out = Vec::new();
        for l in 0..sp.dim {
            for r in 0..sp.dim {
                let v = if la.dual {
                    sp.cup.get(l, r)
                } else {
                    sp.s() * sp.cup.get(r, l)
                };
                if !v.is_zero() {
                    out.push((l, r, v));
                }
            }
        }
        Ok(out)
    }

    fn arrangement_sign(&self, letters: &Word, order: &[usize]) -> Result<bool, ExteriorError> {
        let mut odd_positions = Vec::new();
        for &x in order {
            if self.space(letters.0[x].gen)?.odd {
                odd_positions.push(x);
            }
        }
        let mut inv = 0usize;
        for i in 0..odd_positions.len() {
            for j in i + 1..odd_positions.len() {
                if odd_positions[i] > odd_positions[j] {
                    inv += 1;
                }
            }
        }
        Ok(inv % 2 == 1)
    }

    /// Matrix (target × source) of a single diagram.
    pub fn realize_basis_diagram(&self, d: &Diagram) -> Result<RationalMatrix, ExteriorError> {
        let p = d.src.len();
        let sdims = self.word_dims(&d.src)?;
        let tdims = self.word_dims(&d.dst)?;
        let sdim: usize = sdims.iter().product();
        let tdim: usize = tdims.iter().product();
        let mut through = Vec::new();
        let mut caps = Vec::new();
        let mut cups = Vec::new();
        for (a, b) in d.edges() {
            match (a < p, b < p) {
                (true, true) => caps.push((a, b)),
                (false, false) => cups.push((a - p, b - p)),
                _ => through.push((a, b - p)),
            }
        }
        through.sort_by_key(|&(_, t)| t);
        let lp: Vec<usize> = through
            .iter()
            .map(|&(s, _)| s)
            .chain(caps.iter().flat_map(|&(a, b)| [a, b]))
            .collect();
        let lq: Vec<usize> = through
            .iter()
            .map(|&(_, t)| t)
            .chain(cups.iter().flat_map(|&(a, b)| [a, b]))
            .collect();
        let negative = self.arrangement_sign(&d.src, &lp)? ^ self.arrangement_sign(&d.dst, &lq)?;
        let cup_lists: Vec<Vec<(usize, usize, Scalar)>> = cups
            .iter()
            .map(|&(a, _)| self.cup_entries(d, a))
            .collect::<Result<_, _>>()?;

        let mut out = RationalMatrix::zeros(tdim, sdim);
        if cup_lists.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut digits = vec![0usize; p];
        let mut tdig = vec![0usize; d.dst.len()];
        for a in 0..sdim {
            let mut rest = a;
            for i in (0..p).rev() {
                digits[i] = rest % sdims[i];
                rest /= sdims[i];
            }
            let mut val = if negative { -Scalar::one() } else { Scalar::one() };
            for &(x, y) in &caps {
                val *= self.cap_value(d, x, digits[x], digits[y])?;
                if val.is_zero() {
                    break;
                }
            }
            if val.is_zero() {
                continue;
            }
            for &(s, t) in &through {
                tdig[t] = digits[s];
            }
            let mut choice = vec![0usize; cups.len()];
            loop {
                let mut v = val.clone();
                for (k, &(x, y)) in cups.iter().enumerate() {
                    let (l, r, c) = &cup_lists[k][choice[k]];
                    tdig[x] = *l;
                    tdig[y] = *r;
                    v *= c;
                }
                let b = tdig.iter().zip(&tdims).fold(0usize, |acc, (dg, n)| acc * n + dg);
                out.add_to(b, a, &v);
                let mut k = 0;
                while k < cups.len() {
                    choice[k] += 1;
                    if choice[k] < cup_lists[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == cups.len() {
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn realize_diagram(&self, f: &Morphism) -> Result<RealizedMap, ExteriorError> {
        let mut m = RationalMatrix::zeros(self.word_dim(f.dst())?, self.word_dim(f.src())?);
        for (d, c) in f.terms() {
            m = m.add(&self.realize_basis_diagram(&d)?.scale(c));
        }
        Ok(RealizedMap {
            source: SpaceLabel::Tensor(f.src().clone()),
            target: SpaceLabel::Tensor(f.dst().clone()),
            matrix: m,
        })
    }
}
