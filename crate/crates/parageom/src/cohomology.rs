//! Chevalley–Eilenberg cochains with values in a representation, the
//! differentials d0, d1, d2 as explicit matrices, and cohomology in low
//! degree with canonical representatives.
//!
//! The cochain space `C^k` is flattened so that the coefficient of
//! `w_a ⊗ (e_{S})*` for the p-th sorted k-subset `S` sits at index
//! `p * dim(W) + a`. Differentials carry polynomial entries whenever the
//! algebra or the representation does, so one matrix covers a whole
//! parametric family and specialization is a plain evaluation.

use crate::error::{Error, Result};
use crate::exact::linalg::{self, RowSpace};
use crate::exact::matrix::Matrix;
use crate::exact::poly::Poly;
use crate::exact::scalar::Scalar;
use crate::repthy::{sort_with_sign, sorted_subsets, Representation};
use std::collections::BTreeMap;

/// Dimension of `C^k = Hom(Λ^k g, W)`.
pub fn cochain_dim(rep: &Representation, k: usize) -> usize {
    sorted_subsets(rep.algebra().dim(), k).len() * rep.dim()
}

/// Matrix of `d: C^k -> C^{k+1}`.
///
/// For a sorted (k+1)-tuple `T` and a cochain `phi`,
///
/// ```text
/// (d phi)(e_T) = sum_t (-1)^t rho(e_{T_t}) phi(e_{T \ t})
///              + sum_{s<t} (-1)^{s+t} phi([e_{T_s}, e_{T_t}] ∧ e_{T \ {s,t}})
/// ```
///
/// and the matrix columns range over the basis cochains `(S, b)`.
pub fn d_matrix(rep: &Representation, k: usize) -> Matrix {
    let n = rep.algebra().dim();
    let dw = rep.dim();
    let rows_subsets = sorted_subsets(n, k + 1);
    let cols_subsets = sorted_subsets(n, k);
    let col_index: BTreeMap<&[usize], usize> = cols_subsets
        .iter()
        .enumerate()
        .map(|(p, s)| (s.as_slice(), p))
        .collect();
    let mut m = Matrix::zeros(rows_subsets.len() * dw, cols_subsets.len() * dw);
    let mut add = |row: usize, col: usize, value: Poly| {
        if !value.is_zero() {
            m.set(row, col, m.get(row, col).add(&value));
        }
    };
    for (t_pos, t) in rows_subsets.iter().enumerate() {
        // First sum: act on the value of phi at T with one slot removed.
        for (slot, &i) in t.iter().enumerate() {
            let mut rest = t.clone();
            rest.remove(slot);
            let Some(&s_pos) = col_index.get(rest.as_slice()) else {
                continue;
            };
            let rho = rep.matrix(i);
            let sign_one = slot % 2 == 0;
            for a in 0..dw {
                for b in 0..dw {
                    let c = rho.get(a, b);
                    if c.is_zero() {
                        continue;
                    }
                    let v = if sign_one { c.clone() } else { c.neg() };
                    add(t_pos * dw + a, s_pos * dw + b, v);
                }
            }
        }
        // Second sum: plug the bracket back into phi.
        for s in 0..t.len() {
            for u in (s + 1)..t.len() {
                let mut rest = t.clone();
                rest.remove(u);
                rest.remove(s);
                let bracket = rep.algebra().bracket(t[s], t[u]);
                let pair_sign = (s + u) % 2 == 1; // (-1)^{s+u} with 0-based slots
                for (l, coeff) in bracket.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut full = Vec::with_capacity(rest.len() + 1);
                    full.push(l);
                    full.extend_from_slice(&rest);
                    let Some((sorted, wedge_sign)) = sort_with_sign(&full) else {
                        continue;
                    };
                    let Some(&s_pos) = col_index.get(sorted.as_slice()) else {
                        continue;
                    };
                    let negative = pair_sign ^ (wedge_sign < 0);
                    for a in 0..dw {
                        let v = if negative { coeff.neg() } else { coeff.clone() };
                        add(t_pos * dw + a, s_pos * dw + a, v);
                    }
                }
            }
        }
    }
    m
}

/// `dim H^k` for scalar (non-parametric) input, for k = 0, 1, 2.
pub fn cohomology_dim(rep: &Representation, k: usize) -> Result<usize> {
    let d_k = d_matrix(rep, k);
    let z = cochain_dim(rep, k) - linalg::rank(&d_k)?;
    if k == 0 {
        return Ok(z);
    }
    let d_prev = d_matrix(rep, k - 1);
    Ok(z - linalg::rank(&d_prev)?)
}

/// A cocycle in `C^1` reshaped as the matrix of a linear map `g -> W`
/// (columns indexed by the algebra basis).
fn reshape_one_cochain(rep: &Representation, flat: &[Scalar]) -> Matrix {
    let dw = rep.dim();
    let n = rep.algebra().dim();
    Matrix::from_fn(dw, n, |a, i| Poly::constant(flat[i * dw + a].clone()))
}

/// `H^1` with canonical representatives.
///
/// Representatives are the reduced row echelon basis of the one-cocycles
/// after reduction modulo the coboundary row space, so the answer does not
/// depend on any kernel-basis choice along the way.
pub fn h1_representatives(rep: &Representation) -> Result<Vec<Matrix>> {
    let d1 = d_matrix(rep, 1);
    let cocycles = linalg::kernel(&d1)?;
    let d0 = d_matrix(rep, 0);
    let mut coboundary_rows = Vec::new();
    for c in 0..d0.cols() {
        let col = d0
            .col(c)
            .iter()
            .map(|p| p.expect_scalar("coboundary column"))
            .collect::<Result<Vec<_>>>()?;
        coboundary_rows.push(col);
    }
    let coboundaries = RowSpace::new(coboundary_rows);
    let mut reduced: Vec<Vec<Scalar>> = Vec::new();
    for z in &cocycles {
        let r = coboundaries.reduce(z);
        if r.iter().any(|x| !x.is_zero()) {
            reduced.push(r);
        }
    }
    let basis = linalg::rref_basis(reduced);
    Ok(basis
        .iter()
        .map(|flat| reshape_one_cochain(rep, flat))
        .collect())
}

/// `dim H^1`, shortcut over `h1_representatives`.
pub fn h1_dim(rep: &Representation) -> Result<usize> {
    Ok(h1_representatives(rep)?.len())
}

/// `H^1` dimensions across a one-parameter family: the named exceptional
/// values first, then seeded generic samples (avoiding the exceptional
/// ones). Returns the per-value dimensions and the common generic value,
/// failing loudly if the generic samples disagree among themselves.
pub struct H1Profile {
    pub at: Vec<(Scalar, usize)>,
    pub generic: usize,
}

pub fn h1_profile(
    rep: &Representation,
    param: &str,
    exceptional: &[Scalar],
    seed: u64,
) -> Result<H1Profile> {
    let mut at = Vec::new();
    for v in exceptional {
        let mut values = BTreeMap::new();
        values.insert(param.to_string(), v.clone());
        at.push((v.clone(), h1_dim(&rep.eval(&values)?)?));
    }
    let samples = crate::sample::generic_parameters(seed, 20, exceptional);
    let mut generic: Option<usize> = None;
    for v in samples {
        let mut values = BTreeMap::new();
        values.insert(param.to_string(), v.clone());
        let d = h1_dim(&rep.eval(&values)?)?;
        match generic {
            None => generic = Some(d),
            Some(g) if g == d => {}
            Some(g) => {
                return Err(Error::Degenerate(format!(
                    "generic samples disagree: {g} vs {d} at {param} = {v}; \
                     an exceptional value is missing from the list"
                )))
            }
        }
    }
    Ok(H1Profile {
        at,
        generic: generic.expect("at least one generic sample"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieAlgebra;
    use std::sync::Arc;

    fn sl2() -> Arc<LieAlgebra> {
        Arc::new(
            LieAlgebra::from_bracket_rules(
                "sl2",
                &["h", "e", "f"],
                &[("h", "e", "2*e"), ("h", "f", "-2*f"), ("e", "f", "h")],
            )
            .unwrap(),
        )
    }

    fn heisenberg() -> Arc<LieAlgebra> {
        Arc::new(
            LieAlgebra::from_bracket_rules("heis3", &["x", "y", "z"], &[("x", "y", "z")]).unwrap(),
        )
    }

    #[test]
    fn d_squares_to_zero() {
        for rep in [
            Representation::adjoint(sl2()).unwrap(),
            Representation::adjoint(heisenberg()).unwrap(),
            Representation::trivial(heisenberg(), vec!["w".into()]),
        ] {
            let d0 = d_matrix(&rep, 0);
            let d1 = d_matrix(&rep, 1);
            let d2 = d_matrix(&rep, 2);
            assert!((&d1 * &d0).is_zero());
            assert!((&d2 * &d1).is_zero());
        }
    }

    #[test]
    fn d_squares_to_zero_with_parameters() {
        // Solvable family: [h, x] = x, [h, y] = l*y.
        let g = Arc::new(
            LieAlgebra::from_bracket_rules(
                "aff-family",
                &["h", "x", "y"],
                &[("h", "x", "x"), ("h", "y", "l*y")],
            )
            .unwrap(),
        );
        let rep = Representation::adjoint(g).unwrap();
        let d0 = d_matrix(&rep, 0);
        let d1 = d_matrix(&rep, 1);
        let d2 = d_matrix(&rep, 2);
        assert!((&d1 * &d0).is_zero());
        assert!((&d2 * &d1).is_zero());
    }

    #[test]
    fn whitehead_vanishing_for_sl2() {
        let ad = Representation::adjoint(sl2()).unwrap();
        assert_eq!(cohomology_dim(&ad, 1).unwrap(), 0);
        let trivial = Representation::trivial(sl2(), vec!["w".into()]);
        assert_eq!(cohomology_dim(&trivial, 1).unwrap(), 0);
        assert_eq!(cohomology_dim(&trivial, 2).unwrap(), 0);
        // H^0 of the trivial module is the module itself.
        assert_eq!(cohomology_dim(&trivial, 0).unwrap(), 1);
    }

    #[test]
    fn h1_of_the_line_counts_abelianization() {
        // For the trivial module, H^1 = (g / [g, g])*.
        let b2 = Arc::new(
            LieAlgebra::from_bracket_rules("b2", &["h", "e"], &[("h", "e", "e")]).unwrap(),
        );
        let trivial = Representation::trivial(b2, vec!["w".into()]);
        let reps = h1_representatives(&trivial).unwrap();
        assert_eq!(reps.len(), 1);
        // Canonical representative: h* (value 1 on h, 0 on e).
        assert_eq!(reps[0], Matrix::from_int_rows(&[&[1, 0]]));
        // Heisenberg abelianizes to dimension 2.
        let heis = Representation::trivial(heisenberg(), vec!["w".into()]);
        assert_eq!(h1_dim(&heis).unwrap(), 2);
    }

    #[test]
    fn profile_separates_exceptional_values() {
        // [h, x] = x, [h, y] = l*y over the trivial line: H^1 counts the
        // abelianization, which jumps when l = 0 (y leaves the derived
        // algebra).
        let g = Arc::new(
            LieAlgebra::from_bracket_rules(
                "aff-family",
                &["h", "x", "y"],
                &[("h", "x", "x"), ("h", "y", "l*y")],
            )
            .unwrap(),
        );
        let rep = Representation::trivial(g, vec!["w".into()]);
        let profile = h1_profile(&rep, "l", &[Scalar::zero()], 7).unwrap();
        assert_eq!(profile.generic, 1);
        assert_eq!(profile.at, vec![(Scalar::zero(), 2)]);
    }
}
