//! Lie algebras with exact (possibly parametric) structure constants.
//!
//! A `LieAlgebra` is a named basis plus the full antisymmetric bracket
//! table, with coefficients in `Poly` so one value can carry a whole family.
//! Nothing forces the Jacobi identity at construction: the extension
//! machinery deliberately builds candidate tables first and asks
//! [`LieAlgebra::jacobi_defect`] afterwards.

use crate::error::{Error, Result};
use crate::exact::linalg::{self, RowSpace};
use crate::exact::matrix::Matrix;
use crate::exact::poly::Poly;
use crate::exact::scalar::Scalar;
use crate::sample;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    /// `table[i][j]` = coefficients of `[e_i, e_j]` over the basis; the full
    /// antisymmetric table is stored so lookups never branch.
    table: Vec<Vec<Vec<Poly>>>,
}

/// One nonzero Jacobi residual: the triple it came from, the basis
/// component, and the exact defect.
#[derive(Clone, Debug)]
pub struct JacobiResidual {
    pub triple: (usize, usize, usize),
    pub component: usize,
    pub value: Poly,
    pub label: String,
}

impl LieAlgebra {
    /// Build from textual bracket rules, e.g. `("h", "e", "2*e")`. Pairs not
    /// listed are zero; both orders of a pair may be given if consistent.
    pub fn from_bracket_rules(name: &str, basis: &[&str], rules: &[(&str, &str, &str)]) -> Result<Self> {
        let basis: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
        let n = basis.len();
        let mut table = vec![vec![None::<Vec<Poly>>; n]; n];
        let index = |b: &str| -> Result<usize> {
            basis
                .iter()
                .position(|x| x == b)
                .ok_or_else(|| Error::Parse(format!("unknown basis element `{b}`")))
        };
        for (x, y, expr) in rules {
            let i = index(x)?;
            let j = index(y)?;
            if i == j {
                return Err(Error::Parse(format!("bracket rule [{x},{x}] must be zero")));
            }
            let coeffs = Poly::parse_combination(expr, &basis)?;
            let negated: Vec<Poly> = coeffs.iter().map(Poly::neg).collect();
            for (slot, val) in [((i, j), coeffs), ((j, i), negated)] {
                match &table[slot.0][slot.1] {
                    Some(existing) if *existing != val => {
                        return Err(Error::Parse(format!(
                            "conflicting rules for [{x},{y}]"
                        )));
                    }
                    _ => table[slot.0][slot.1] = Some(val),
                }
            }
        }
        let table = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cell| cell.unwrap_or_else(|| vec![Poly::zero(); n]))
                    .collect()
            })
            .collect();
        Ok(LieAlgebra {
            name: name.to_string(),
            basis,
            table,
        })
    }

    /// Build from explicit coefficient vectors for `i < j`.
    pub fn from_table(name: &str, basis: Vec<String>, upper: Vec<((usize, usize), Vec<Poly>)>) -> Result<Self> {
        let n = basis.len();
        let mut table = vec![vec![vec![Poly::zero(); n]; n]; n];
        for ((i, j), coeffs) in upper {
            if i >= j || j >= n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket index ({i},{j}) out of range for upper-triangle input"
                )));
            }
            if coeffs.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i},{j}) has {} coefficients for dimension {n}",
                    coeffs.len()
                )));
            }
            table[j][i] = coeffs.iter().map(Poly::neg).collect();
            table[i][j] = coeffs;
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            basis,
            table,
        })
    }

    /// Realize a Lie algebra from concrete matrices: structure constants are
    /// read off by expanding each commutator over the given span. Fails with
    /// `InvalidSpan` if the matrices are dependent or not closed.
    pub fn from_matrices(name: &str, basis: &[&str], mats: &[Matrix]) -> Result<Self> {
        if basis.len() != mats.len() {
            return Err(Error::DimensionMismatch(
                "one name per matrix is required".into(),
            ));
        }
        let n = mats.len();
        if n == 0 {
            return Err(Error::InvalidSpan("empty matrix list".into()));
        }
        let (r, c) = (mats[0].rows(), mats[0].cols());
        let flat = |m: &Matrix| -> Result<Vec<Scalar>> {
            Ok(m.scalar_rows()?.into_iter().flatten().collect())
        };
        // Columns of `span` are the flattened basis matrices.
        let mut span_rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(n); r * c];
        for m in mats {
            if m.rows() != r || m.cols() != c {
                return Err(Error::DimensionMismatch("matrix shapes differ".into()));
            }
            for (k, entry) in flat(m)?.into_iter().enumerate() {
                span_rows[k].push(entry);
            }
        }
        let span = Matrix::from_scalar_rows(span_rows)?;
        let sys = linalg::PrereducedSystem::new(&span)?;
        if sys.rank() < n {
            return Err(Error::InvalidSpan(format!(
                "matrices span only {} of {n} dimensions",
                sys.rank()
            )));
        }
        let mut upper = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let rhs = flat(&mats[i].commutator(&mats[j]))?;
                match sys.solve(&rhs)? {
                    linalg::AffineOutcome::Solvable { particular, .. } => {
                        upper.push(((i, j), particular.into_iter().map(Poly::constant).collect()));
                    }
                    linalg::AffineOutcome::Infeasible { .. } => {
                        return Err(Error::InvalidSpan(format!(
                            "commutator [{}, {}] falls outside the span",
                            basis[i], basis[j]
                        )));
                    }
                }
            }
        }
        LieAlgebra::from_table(name, basis.iter().map(|s| s.to_string()).collect(), upper)
    }

    /// Direct sum: brackets within each summand, zero across.
    pub fn direct_sum(&self, other: &LieAlgebra, name: &str) -> LieAlgebra {
        let n = self.dim();
        let m = other.dim();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut table = vec![vec![vec![Poly::zero(); n + m]; n + m]; n + m];
        for (i, row) in self.table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                table[i][j][..n].clone_from_slice(cell);
            }
        }
        for (i, row) in other.table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                table[n + i][n + j][n..].clone_from_slice(cell);
            }
        }
        LieAlgebra {
            name: name.to_string(),
            basis,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Parse(format!("unknown basis element `{name}`")))
    }

    /// Coefficients of `[e_i, e_j]` over the basis.
    pub fn bracket(&self, i: usize, j: usize) -> &[Poly] {
        &self.table[i][j]
    }

    /// Structure constant: the `e_k` coefficient of `[e_i, e_j]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.table[i][j][k]
    }

    /// Bilinear extension of the bracket to coefficient vectors.
    pub fn bracket_of(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        let n = self.dim();
        assert_eq!(x.len(), n, "bracket_of: left argument length");
        assert_eq!(y.len(), n, "bracket_of: right argument length");
        let mut out = vec![Poly::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let factor = xi.mul(yj);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add(&c.mul(&factor));
                    }
                }
            }
        }
        out
    }

    /// Adjoint matrix of the `i`-th basis element.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.table[i][j][k].clone())
    }

    /// Adjoint matrix of an arbitrary element given by scalar coordinates.
    pub fn ad_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        assert_eq!(x.len(), n, "ad_of: coordinate length");
        let mut acc = Matrix::zeros(n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.ad_basis(i).scale(c);
            }
        }
        acc
    }

    /// All nonzero Jacobi residuals over basis triples. Empty exactly when
    /// the table satisfies the Jacobi identity (antisymmetry is structural).
    pub fn jacobi_defect(&self) -> Vec<JacobiResidual> {
        let n = self.dim();
        let mut out = Vec::new();
        let e = |i: usize| -> Vec<Poly> {
            let mut v = vec![Poly::zero(); n];
            v[i] = Poly::one();
            v
        };
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let t1 = self.bracket_of(&self.bracket_of(&e(i), &e(j)), &e(k));
                    let t2 = self.bracket_of(&self.bracket_of(&e(j), &e(k)), &e(i));
                    let t3 = self.bracket_of(&self.bracket_of(&e(k), &e(i)), &e(j));
                    for comp in 0..n {
                        let total = t1[comp].add(&t2[comp]).add(&t3[comp]);
                        if !total.is_zero() {
                            out.push(JacobiResidual {
                                triple: (i, j, k),
                                component: comp,
                                label: format!(
                                    "[{},{},{}] -> {}",
                                    self.basis[i], self.basis[j], self.basis[k], self.basis[comp]
                                ),
                                value: total,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_defect().is_empty()
    }

    /// Killing form `B(e_i, e_j) = tr(ad e_i ad e_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = (&ads[i] * &ads[j]).trace();
                b.set(i, j, t.clone());
                b.set(j, i, t);
            }
        }
        b
    }

    /// Parameter names appearing anywhere in the table.
    pub fn parameters(&self) -> Vec<String> {
        let mut set = std::collections::BTreeSet::new();
        for row in &self.table {
            for cell in row {
                for p in cell {
                    for v in p.vars() {
                        set.insert(v.clone());
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Substitute parameter values/polynomials throughout the table.
    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> LieAlgebra {
        LieAlgebra {
            name: self.name.clone(),
            basis: self.basis.clone(),
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(|p| p.substitute(map)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn rename(&self, name: &str) -> LieAlgebra {
        LieAlgebra {
            name: name.to_string(),
            ..self.clone()
        }
    }

    /// Span of all brackets, as a canonical echelon basis.
    pub fn derived_subalgebra(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let mut vectors = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut v = Vec::with_capacity(n);
                for k in 0..n {
                    v.push(self.table[i][j][k].expect_scalar("derived subalgebra of a parametric table")?);
                }
                vectors.push(v);
            }
        }
        Ok(linalg::rref_basis(vectors))
    }

    /// Joint kernel of the adjoint action.
    pub fn center(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let mut stacked = Matrix::zeros(0, n);
        for i in 0..n {
            stacked = stacked.vstack(&self.ad_basis(i))?;
        }
        linalg::kernel(&stacked)
    }

    /// Orthogonal complement of the derived subalgebra under the Killing
    /// form (Cartan's criterion makes this the maximal solvable ideal).
    pub fn radical(&self) -> Result<Vec<Vec<Scalar>>> {
        let b = self.killing_form();
        let derived = self.derived_subalgebra()?;
        if derived.is_empty() {
            return Ok(RowSpace::new(
                (0..self.dim())
                    .map(|i| {
                        let mut v = vec![Scalar::zero(); self.dim()];
                        v[i] = Scalar::one();
                        v
                    })
                    .collect(),
            )
            .basis()
            .to_vec());
        }
        let rows: Vec<Vec<Scalar>> = derived
            .iter()
            .map(|d| {
                let dv: Vec<Poly> = d.iter().map(|s| Poly::constant(s.clone())).collect();
                b.apply(&dv)
                    .into_iter()
                    .map(|p| p.expect_scalar("Killing form of a parametric table"))
                    .collect::<Result<Vec<Scalar>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        linalg::kernel(&Matrix::from_scalar_rows(rows)?)
    }

    /// Generic minimal dimension of `ker(ad x)`, the working rank: the
    /// minimum over seeded rational sample points (20 by default). For a
    /// reductive algebra this is the dimension of a Cartan subalgebra.
    pub fn rank(&self, seed: u64) -> Result<usize> {
        let n = self.dim();
        let samples = sample::rational_vectors(seed, 20, n);
        let mut best = n;
        for x in &samples {
            let ad = self.ad_of(x);
            best = best.min(n - linalg::rank(&ad)?);
        }
        Ok(best)
    }

    /// Invariant fingerprint and, where the combination pins down a known
    /// algebra, a label. `sp4_R` deliberately stands for one class: sp(4,R)
    /// and so(2,3) share dimension, Killing signature, and rank.
    pub fn identify(&self, seed: u64) -> Result<IdentityCard> {
        let b = self.killing_form();
        let signature = linalg::signature(&b)?;
        let rank = self.rank(seed)?;
        let derived_dim = self.derived_subalgebra()?.len();
        let center_dim = self.center()?.len();
        let label = match (self.dim(), signature, rank) {
            (3, (2, 1, 0), 1) => Some("sl2_R"),
            (3, (0, 3, 0), 1) => Some("su2"),
            (6, (0, 6, 0), 2) => Some("su2_x_su2"),
            (8, (5, 3, 0), 2) => Some("sl3_R"),
            (9, (0, 9, 0), 3) => Some("su2_cubed"),
            (10, (6, 4, 0), 2) => Some("sp4_R"),
            (14, (8, 6, 0), 2) => Some("g2_split"),
            _ => None,
        };
        Ok(IdentityCard {
            name: self.name.clone(),
            dim: self.dim(),
            killing_signature: signature,
            rank,
            derived_dim,
            center_dim,
            label: label.map(str::to_string),
        })
    }
}

/// Invariants used to recognize an algebra independent of its presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCard {
    pub name: String,
    pub dim: usize,
    /// (positive, negative, zero) inertia of the Killing form.
    pub killing_signature: (usize, usize, usize),
    pub rank: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub label: Option<String>,
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    /// Basis name -> coefficient expression (canonical polynomial text).
    coeffs: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct LieAlgebraRepr {
    name: String,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketEntry>,
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut coeffs = BTreeMap::new();
                for k in 0..n {
                    if !self.table[i][j][k].is_zero() {
                        coeffs.insert(self.basis[k].clone(), self.table[i][j][k].to_string());
                    }
                }
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i, j, coeffs });
                }
            }
        }
        LieAlgebraRepr {
            name: self.name.clone(),
            dim: n,
            basis: self.basis.clone(),
            brackets,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LieAlgebraRepr::deserialize(d)?;
        if repr.basis.len() != repr.dim {
            return Err(D::Error::custom("dim does not match basis length"));
        }
        let mut upper = Vec::new();
        for entry in repr.brackets {
            let (i, j, flip) = if entry.i < entry.j {
                (entry.i, entry.j, false)
            } else if entry.j < entry.i {
                (entry.j, entry.i, true)
            } else {
                return Err(D::Error::custom("bracket with i == j"));
            };
            if j >= repr.dim {
                return Err(D::Error::custom("bracket index out of range"));
            }
            let mut coeffs = vec![Poly::zero(); repr.dim];
            for (name, expr) in entry.coeffs {
                let k = repr
                    .basis
                    .iter()
                    .position(|b| *b == name)
                    .ok_or_else(|| D::Error::custom(format!("unknown basis element `{name}`")))?;
                let p = Poly::parse(&expr).map_err(D::Error::custom)?;
                coeffs[k] = if flip { p.neg() } else { p };
            }
            upper.push(((i, j), coeffs));
        }
        LieAlgebra::from_table(&repr.name, repr.basis, upper).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_bracket_rules(
            "sl2",
            &["h", "e", "f"],
            &[("h", "e", "2*e"), ("h", "f", "-2*f"), ("e", "f", "h")],
        )
        .unwrap()
    }

    fn su2() -> LieAlgebra {
        LieAlgebra::from_bracket_rules(
            "su2",
            &["x", "y", "z"],
            &[("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")],
        )
        .unwrap()
    }

    #[test]
    fn sl2_killing_form_and_identity() {
        let g = sl2();
        assert!(g.is_lie_algebra());
        let b = g.killing_form();
        assert_eq!(b, Matrix::from_int_rows(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]));
        let card = g.identify(7).unwrap();
        assert_eq!(card.killing_signature, (2, 1, 0));
        assert_eq!(card.rank, 1);
        assert_eq!(card.label.as_deref(), Some("sl2_R"));
    }

    #[test]
    fn su2_is_the_compact_form() {
        let g = su2();
        assert_eq!(g.killing_form(), Matrix::identity(3).scale(&Scalar::from_int(-2)));
        let card = g.identify(7).unwrap();
        assert_eq!(card.label.as_deref(), Some("su2"));
        let cubed = g.direct_sum(&g.rename("su2'"), "tmp").direct_sum(&g.rename("su2''"), "su2^3");
        let card = cubed.identify(7).unwrap();
        assert_eq!(card.label.as_deref(), Some("su2_cubed"));
        assert_eq!(card.rank, 3);
    }

    #[test]
    fn matrix_realization_recovers_the_table() {
        let e = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        let h = Matrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        let g = LieAlgebra::from_matrices("sl2", &["h", "e", "f"], &[h, e, f]).unwrap();
        assert_eq!(g.bracket(0, 1), sl2().bracket(0, 1));
        assert_eq!(g.bracket(0, 2), sl2().bracket(0, 2));
        assert_eq!(g.bracket(1, 2), sl2().bracket(1, 2));

        // A non-closed span is rejected.
        let n = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let m = Matrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        assert!(matches!(
            LieAlgebra::from_matrices("bad", &["n", "m"], &[n, m]),
            Err(Error::InvalidSpan(_))
        ));
    }

    #[test]
    fn jacobi_defect_pinpoints_the_failure() {
        let bad = LieAlgebra::from_bracket_rules(
            "not-a-lie-algebra",
            &["e1", "e2", "e3"],
            &[("e1", "e2", "e3"), ("e1", "e3", "e2"), ("e2", "e3", "e3")],
        )
        .unwrap();
        let defect = bad.jacobi_defect();
        assert_eq!(defect.len(), 1);
        assert_eq!(defect[0].label, "[e1,e2,e3] -> e2");
        assert_eq!(defect[0].value, Poly::from_int(-1));
    }

    #[test]
    fn parametric_families_keep_jacobi_symbolically() {
        // A two-parameter solvable family: closed for every (a, b).
        let fam = LieAlgebra::from_bracket_rules(
            "family",
            &["t", "x", "y"],
            &[("t", "x", "a*x + b*y"), ("t", "y", "b*x - a*y")],
        )
        .unwrap();
        assert!(fam.is_lie_algebra());
        assert_eq!(fam.parameters(), vec!["a".to_string(), "b".to_string()]);
        let mut at = BTreeMap::new();
        at.insert("a".to_string(), Poly::from_int(2));
        at.insert("b".to_string(), Poly::zero());
        let specialized = fam.substitute(&at);
        assert!(specialized.parameters().is_empty());
        assert_eq!(specialized.bracket(0, 1)[1], Poly::from_int(2));
    }

    #[test]
    fn derived_center_radical_on_gl2_like_sum() {
        // sl2 plus a central line.
        let g = LieAlgebra::from_bracket_rules(
            "gl2",
            &["h", "e", "f", "z"],
            &[("h", "e", "2*e"), ("h", "f", "-2*f"), ("e", "f", "h")],
        )
        .unwrap();
        assert_eq!(g.derived_subalgebra().unwrap().len(), 3);
        let center = g.center().unwrap();
        assert_eq!(center.len(), 1);
        assert_eq!(center[0][3], Scalar::one());
        let radical = g.radical().unwrap();
        assert_eq!(radical.len(), 1);
        assert_eq!(radical[0][3], Scalar::one());
    }

    #[test]
    fn serde_round_trip_preserves_the_table() {
        let fam = LieAlgebra::from_bracket_rules(
            "family",
            &["t", "x", "y"],
            &[("t", "x", "a*x"), ("x", "y", "1/2*y - x")],
        )
        .unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        let back: LieAlgebra = serde_json::from_str(&json).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(back.bracket(i, j), fam.bracket(i, j));
            }
        }
        assert_eq!(back.name(), "family");
    }
}
