//! Multivariate division and Buchberger's algorithm.
//!
//! The constraint ideals produced by the extension machinery are small (a
//! handful of variables, low degree), so this is a straightforward
//! implementation: normal selection strategy plus the product and chain
//! criteria, with hard resource caps instead of cleverness. Reduced monic
//! bases are unique per (ideal, order), which the identity tests rely on.

use crate::error::{Error, Result};
use crate::exact::linalg::rref_basis;
use crate::exact::poly::{Exponents, MonomialOrder, OrderKind, Poly};
use crate::exact::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::sync::Arc;

/// Hard limits for the Gröbner engine. Exceeding any of them aborts with
/// `Error::ResourceCap` naming the cap, rather than grinding on.
#[derive(Clone, Copy, Debug)]
pub struct GroebnerCaps {
    /// Input generators after compression.
    pub max_generators: usize,
    /// Distinct variables across the generators.
    pub max_vars: usize,
    /// Basis elements retained during the run.
    pub max_basis: usize,
    /// Terms in any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for GroebnerCaps {
    fn default() -> Self {
        GroebnerCaps {
            max_generators: 32,
            max_vars: 12,
            max_basis: 256,
            max_terms: 1 << 18,
        }
    }
}

impl GroebnerCaps {
    /// Caps scaled to roughly `mb` megabytes of term storage; the structural
    /// generator/variable caps stay fixed. `PARAGEOM_CAP_MB` feeds this.
    pub fn with_budget_mb(mb: usize) -> Self {
        GroebnerCaps {
            // ~64 bytes per small term is a fair exact-rational estimate.
            max_terms: (mb.max(1) * (1 << 20)) / 64,
            ..GroebnerCaps::default()
        }
    }

    /// Read `PARAGEOM_CAP_MB` (decimal megabytes) from the environment,
    /// falling back to the defaults when unset or unparsable.
    pub fn from_env() -> Self {
        match std::env::var("PARAGEOM_CAP_MB").ok().and_then(|v| v.parse::<usize>().ok()) {
            Some(mb) => GroebnerCaps::with_budget_mb(mb),
            None => GroebnerCaps::default(),
        }
    }
}

/// Terms keyed so that the map's natural order is the monomial order; the
/// leading term is `next_back`.
#[derive(Clone, Default)]
struct OrdPoly {
    terms: BTreeMap<Vec<u32>, (Exponents, Scalar)>,
}

impl OrdPoly {
    fn from_poly(p: &Poly, vars: &[String], order: &MonomialOrder) -> Self {
        let pos: Vec<usize> = p
            .vars()
            .iter()
            .map(|v| vars.binary_search(v).expect("aligned variable set"))
            .collect();
        let mut terms = BTreeMap::new();
        for (exp, c) in p.terms() {
            let mut e = vec![0u32; vars.len()];
            for (i, &pi) in pos.iter().enumerate() {
                e[pi] = exp[i];
            }
            terms.insert(order.key(&e), (e, c.clone()));
        }
        OrdPoly { terms }
    }

    fn to_poly(&self, vars: &Arc<Vec<String>>) -> Poly {
        let map: BTreeMap<Exponents, Scalar> = self
            .terms
            .values()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Poly::from_terms(vars.clone(), map)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().next_back().map(|(_, (e, c))| (e, c))
    }

    fn len(&self) -> usize {
        self.terms.len()
    }

    /// self += c * x^shift * other
    fn add_scaled_shifted(&mut self, other: &OrdPoly, shift: &[u32], c: &Scalar, order: &MonomialOrder) {
        for (e, k) in other.terms.values() {
            let exp: Exponents = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            let key = order.key(&exp);
            let add = k * c;
            match self.terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((exp, add));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().1 += &add;
                    if o.get().1.is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }

    fn make_monic(&mut self) {
        let inv = match self.lead() {
            Some((_, c)) if !c.is_one() => c.recip().expect("leading coefficient is nonzero"),
            _ => return,
        };
        for (_, c) in self.terms.values_mut() {
            *c = &*c * &inv;
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn exp_sub(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Remainder of `f` under multivariate division by `gens` (tried in order).
fn normal_form_ord(f: &OrdPoly, gens: &[OrdPoly], order: &MonomialOrder, caps: &GroebnerCaps) -> Result<OrdPoly> {
    let mut work = f.clone();
    let mut rem = OrdPoly::default();
    'outer: while let Some((exp, c)) = work.lead().map(|(e, c)| (e.clone(), c.clone())) {
        if work.len() + rem.len() > caps.max_terms {
            return Err(Error::ResourceCap(format!(
                "term cap: intermediate polynomial exceeded {} terms during division",
                caps.max_terms
            )));
        }
        for g in gens {
            let (ge, gc) = g.lead().expect("divisors are nonzero");
            if divides(ge, &exp) {
                let shift = exp_sub(&exp, ge);
                let factor = -&(&c / gc);
                work.add_scaled_shifted(g, &shift, &factor, order);
                continue 'outer;
            }
        }
        let key = order.key(&exp);
        work.terms.remove(&key);
        rem.terms.insert(key, (exp, c));
    }
    Ok(rem)
}

fn align_vars(polys: &[Poly]) -> Vec<String> {
    let mut set = BTreeSet::new();
    for p in polys {
        for v in p.vars() {
            set.insert(v.clone());
        }
    }
    set.into_iter().collect()
}

/// Normal form of `f` under division by `gens` with the given order. This is
/// plain division: a zero result proves membership, a nonzero result proves
/// nothing unless `gens` is a Gröbner basis.
pub fn normal_form(f: &Poly, gens: &[Poly], kind: OrderKind, priority: &[&str]) -> Result<Poly> {
    let mut all: Vec<Poly> = gens.to_vec();
    all.push(f.clone());
    let vars = Arc::new(align_vars(&all));
    let order = MonomialOrder::with_priority(kind, &vars, priority)?;
    let divisors: Vec<OrdPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrdPoly::from_poly(g, &vars, &order))
        .collect();
    let caps = GroebnerCaps::default();
    let nf = normal_form_ord(&OrdPoly::from_poly(f, &vars, &order), &divisors, &order, &caps)?;
    Ok(nf.to_poly(&vars))
}

/// A reduced monic Gröbner basis together with its order data.
pub struct GroebnerBasis {
    vars: Arc<Vec<String>>,
    order: MonomialOrder,
    kind: OrderKind,
    priority_names: Vec<String>,
    caps: GroebnerCaps,
    basis: Vec<OrdPoly>,
    public: Vec<Poly>,
}

impl GroebnerBasis {
    /// Compute with the default order (grevlex, alphabetical priority).
    pub fn new(gens: &[Poly], caps: GroebnerCaps) -> Result<Self> {
        GroebnerBasis::with_order(gens, OrderKind::GrevLex, &[], caps)
    }

    /// Compute with an explicit order. Putting variables first in `priority`
    /// under `Lex` makes this an elimination order for them.
    pub fn with_order(gens: &[Poly], kind: OrderKind, priority: &[&str], caps: GroebnerCaps) -> Result<Self> {
        let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.len() > caps.max_generators {
            return Err(Error::ResourceCap(format!(
                "generator cap: {} generators exceed the limit of {}",
                nonzero.len(),
                caps.max_generators
            )));
        }
        let mut var_list = align_vars(&nonzero);
        if var_list.len() > caps.max_vars {
            return Err(Error::ResourceCap(format!(
                "variable cap: {} variables exceed the limit of {}",
                var_list.len(),
                caps.max_vars
            )));
        }
        // Priority names must take part in the alignment even if they do not
        // occur in the generators (harmless, keeps elimination orders total).
        for name in priority {
            if !var_list.iter().any(|v| v == name) {
                var_list.push(name.to_string());
            }
        }
        var_list.sort();
        let vars = Arc::new(var_list);
        let order = MonomialOrder::with_priority(kind, &vars, priority)?;
        let mut gb = GroebnerBasis {
            vars,
            order,
            kind,
            priority_names: priority.iter().map(|s| s.to_string()).collect(),
            caps,
            basis: Vec::new(),
            public: Vec::new(),
        };
        gb.run(&nonzero)?;
        Ok(gb)
    }

    fn run(&mut self, gens: &[Poly]) -> Result<()> {
        let mut basis: Vec<OrdPoly> = Vec::new();
        for g in gens {
            let mut og = OrdPoly::from_poly(g, &self.vars, &self.order);
            og.make_monic();
            basis.push(og);
        }
        // Pair queue ordered by lcm (normal selection), then indices.
        let mut queue: BinaryHeap<Reverse<(Vec<u32>, usize, usize)>> = BinaryHeap::new();
        let mut considered: BTreeSet<(usize, usize)> = BTreeSet::new();
        let push_pairs = |queue: &mut BinaryHeap<_>, basis: &[OrdPoly], j: usize| {
            for i in 0..j {
                let (li, _) = basis[i].lead().unwrap();
                let (lj, _) = basis[j].lead().unwrap();
                let lcm = exp_lcm(li, lj);
                queue.push(Reverse((self.order.key(&lcm), i, j)));
            }
        };
        for j in 0..basis.len() {
            push_pairs(&mut queue, &basis, j);
        }
        while let Some(Reverse((_, i, j))) = queue.pop() {
            considered.insert((i, j));
            let (li, _) = basis[i].lead().unwrap();
            let (lj, _) = basis[j].lead().unwrap();
            let lcm = exp_lcm(li, lj);
            // Product criterion: coprime leading monomials.
            let product: Exponents = li.iter().zip(lj.iter()).map(|(a, b)| a + b).collect();
            if lcm == product {
                continue;
            }
            // Chain criterion: some third leading monomial divides the lcm
            // and both associated pairs were already considered.
            let chain = (0..basis.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let (lk, _) = basis[k].lead().unwrap();
                divides(lk, &lcm)
                    && considered.contains(&(i.min(k), i.max(k)))
                    && considered.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            // S-polynomial of two monic elements.
            let mut s = OrdPoly::default();
            s.add_scaled_shifted(&basis[i], &exp_sub(&lcm, li), &Scalar::one(), &self.order);
            s.add_scaled_shifted(&basis[j], &exp_sub(&lcm, lj), &-&Scalar::one(), &self.order);
            let mut r = normal_form_ord(&s, &basis, &self.order, &self.caps)?;
            if r.is_zero() {
                continue;
            }
            r.make_monic();
            basis.push(r);
            if basis.len() > self.caps.max_basis {
                return Err(Error::ResourceCap(format!(
                    "basis cap: more than {} basis elements",
                    self.caps.max_basis
                )));
            }
            push_pairs(&mut queue, &basis, basis.len() - 1);
        }
        // Inter-reduce to the unique reduced monic basis.
        loop {
            let mut changed = false;
            let mut k = 0;
            while k < basis.len() {
                let f = basis.remove(k);
                let mut r = normal_form_ord(&f, &basis, &self.order, &self.caps)?;
                if r.is_zero() {
                    changed = true;
                    continue; // dropped; indices shift down
                }
                r.make_monic();
                if r.terms != f.terms {
                    changed = true;
                }
                basis.insert(k, r);
                k += 1;
            }
            if !changed {
                break;
            }
        }
        basis.sort_by(|a, b| {
            let ka = self.order.key(a.lead().unwrap().0);
            let kb = self.order.key(b.lead().unwrap().0);
            ka.cmp(&kb)
        });
        self.public = basis.iter().map(|b| b.to_poly(&self.vars)).collect();
        self.basis = basis;
        Ok(())
    }

    /// The reduced monic basis, sorted by leading monomial.
    pub fn basis(&self) -> &[Poly] {
        &self.public
    }

    /// Normal form modulo the ideal; zero exactly for members.
    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        // `f` may mention variables outside the alignment. A Gröbner basis
        // stays one after adjoining fresh variables to the ring, so realign
        // over the union with the same order data.
        if f.vars().iter().any(|v| self.vars.binary_search(v).is_err()) {
            let mut all = self.public.clone();
            all.push(f.clone());
            let vars = Arc::new(align_vars(&all));
            let prio: Vec<&str> = self.priority_names.iter().map(String::as_str).collect();
            let order = MonomialOrder::with_priority(self.kind, &vars, &prio)?;
            let divisors: Vec<OrdPoly> = self
                .public
                .iter()
                .map(|g| OrdPoly::from_poly(g, &vars, &order))
                .collect();
            let of = OrdPoly::from_poly(f, &vars, &order);
            let nf = normal_form_ord(&of, &divisors, &order, &self.caps)?;
            return Ok(nf.to_poly(&vars));
        }
        let of = OrdPoly::from_poly(f, &self.vars, &self.order);
        let nf = normal_form_ord(&of, &self.basis, &self.order, &self.caps)?;
        Ok(nf.to_poly(&self.vars))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Whole ring: basis is exactly {1}.
    pub fn is_unit_ideal(&self) -> bool {
        self.public.len() == 1 && self.public[0].is_constant() && !self.public[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.public.is_empty()
    }

    /// Basis elements lying in the subring on `keep` (for elimination
    /// ideals; meaningful under a Lex order prioritizing the others).
    pub fn restricted_to(&self, keep: &[&str]) -> Vec<Poly> {
        self.public
            .iter()
            .filter(|p| p.vars().iter().all(|v| keep.contains(&v.as_str())))
            .cloned()
            .collect()
    }
}

/// Equality as ideals: each side's generators reduce to zero against the
/// other side's basis.
pub fn ideals_equal(a: &[Poly], b: &[Poly], caps: GroebnerCaps) -> Result<bool> {
    let gb_a = GroebnerBasis::new(a, caps)?;
    let gb_b = GroebnerBasis::new(b, caps)?;
    for g in a {
        if !gb_b.contains(g)? {
            return Ok(false);
        }
    }
    for g in b {
        if !gb_a.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drop rational-linear dependencies among generators: write them over the
/// union of their monomials and keep the reduced echelon rows. Deterministic
/// and often the difference between fitting under the generator cap or not.
pub fn compress_generators(gens: &[Poly]) -> Vec<Poly> {
    let nonzero: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let vars = Arc::new(align_vars(&nonzero.iter().map(|p| (*p).clone()).collect::<Vec<_>>()));
    let order = MonomialOrder::default_for(&vars);
    let aligned: Vec<OrdPoly> = nonzero
        .iter()
        .map(|p| OrdPoly::from_poly(p, &vars, &order))
        .collect();
    // Column basis: all monomials, leading first so echelon pivots sit on
    // leading monomials.
    let mut monomials: BTreeSet<Vec<u32>> = BTreeSet::new();
    for p in &aligned {
        for key in p.terms.keys() {
            monomials.insert(key.clone());
        }
    }
    let cols: Vec<Vec<u32>> = monomials.into_iter().rev().collect();
    let col_index: BTreeMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let rows: Vec<Vec<Scalar>> = aligned
        .iter()
        .map(|p| {
            let mut row = vec![Scalar::zero(); cols.len()];
            for (key, (_, c)) in &p.terms {
                row[col_index[key]] = c.clone();
            }
            row
        })
        .collect();
    let reduced = rref_basis(rows);
    reduced
        .into_iter()
        .map(|row| {
            let mut terms = BTreeMap::new();
            for (j, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    // Recover the exponent vector from the order key.
                    let exp = key_to_exp(&cols[j], vars.len());
                    terms.insert(exp, c);
                }
            }
            Poly::from_terms(vars.clone(), terms)
        })
        .collect()
}

/// Invert the default (grevlex, identity-priority) key built by
/// `MonomialOrder::key`: entries after the leading degree are
/// `u32::MAX - exp` in reverse variable order.
fn key_to_exp(key: &[u32], n_vars: usize) -> Exponents {
    let mut exp = vec![0u32; n_vars];
    for (offset, i) in (0..n_vars).rev().enumerate() {
        exp[i] = u32::MAX - key[1 + offset];
    }
    exp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn caps() -> GroebnerCaps {
        GroebnerCaps::default()
    }

    #[test]
    fn circle_meets_diagonal() {
        let gb = GroebnerBasis::with_order(
            &[p("x^2 + y^2 - 1"), p("x - y")],
            OrderKind::Lex,
            &["x", "y"],
            caps(),
        )
        .unwrap();
        assert_eq!(gb.basis(), &[p("y^2 - 1/2"), p("x - y")]);
        assert!(gb.contains(&p("x^2 - y^2")).unwrap());
        assert!(!gb.contains(&p("x + y")).unwrap());
        assert!(!gb.is_unit_ideal());
    }

    #[test]
    fn elimination_order_projects_out_a_variable() {
        // x = y^2 and x^2 = z force y^4 = z.
        let gb = GroebnerBasis::with_order(
            &[p("x - y^2"), p("x^2 - z")],
            OrderKind::Lex,
            &["x"],
            caps(),
        )
        .unwrap();
        let eliminated = gb.restricted_to(&["y", "z"]);
        assert_eq!(eliminated, vec![p("y^4 - z")]);
    }

    #[test]
    fn unit_ideal_detection() {
        let gb = GroebnerBasis::new(&[p("x"), p("x - 1")], caps()).unwrap();
        assert!(gb.is_unit_ideal());
        assert!(gb.contains(&Poly::one()).unwrap());
        let zero = GroebnerBasis::new(&[Poly::zero()], caps()).unwrap();
        assert!(zero.is_zero_ideal());
        assert_eq!(zero.reduce(&p("q^2 - 1")).unwrap(), p("q^2 - 1"));
    }

    #[test]
    fn division_normal_form_is_a_remainder() {
        // f = q1*g1 + q2*g2 + r with r reduced; division must recover r.
        let g1 = p("x^2 - y");
        let g2 = p("x*y - 1");
        let r = p("3*x + y - 5");
        let f = p("x + 2").mul(&g1).add(&p("y^2 - 7").mul(&g2)).add(&r);
        let nf = normal_form(&f, &[g1, g2], OrderKind::GrevLex, &[]).unwrap();
        assert_eq!(nf, r);
    }

    #[test]
    fn ideal_level_equality() {
        assert!(ideals_equal(&[p("x + y"), p("x - y")], &[p("x"), p("y")], caps()).unwrap());
        assert!(!ideals_equal(&[p("x^2"), p("x*y")], &[p("x")], caps()).unwrap());
    }

    #[test]
    fn generator_compression_drops_linear_dependencies() {
        let gens = vec![p("x + y"), p("2*x + 2*y"), p("x - y"), Poly::zero()];
        let compressed = compress_generators(&gens);
        assert_eq!(compressed, vec![p("x"), p("y")]);
        assert!(ideals_equal(&gens, &compressed, caps()).unwrap());
    }

    #[test]
    fn resource_caps_abort_by_name() {
        let too_many_vars: Vec<Poly> = (0..13).map(|i| Poly::var(&format!("v{i:02}"))).collect();
        match GroebnerBasis::new(&too_many_vars, caps()).err() {
            Some(Error::ResourceCap(msg)) => assert!(msg.contains("variable cap")),
            other => panic!("expected a variable-cap error, got {other:?}"),
        }
        let too_many_gens: Vec<Poly> = (0..33).map(|i| Poly::parse(&format!("x - {i}")).unwrap()).collect();
        match GroebnerBasis::new(&too_many_gens, caps()).err() {
            Some(Error::ResourceCap(msg)) => assert!(msg.contains("generator cap")),
            other => panic!("expected a generator-cap error, got {other:?}"),
        }
    }

    #[test]
    fn reduce_handles_foreign_variables() {
        let gb = GroebnerBasis::new(&[p("x - 1")], caps()).unwrap();
        assert_eq!(gb.reduce(&p("x*t + t")).unwrap(), p("2*t"));
    }
}
