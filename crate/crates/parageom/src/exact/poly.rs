//! Sparse multivariate polynomials over exact rationals.
//!
//! Polynomials are the coefficient domain for parametric structure constants
//! (families like `a1..a7` or the grading parameter `l`). Variables are kept
//! sorted alphabetically and unused variables are trimmed away after every
//! operation, so structural equality coincides with mathematical equality and
//! serialized output is canonical.

use crate::error::{Error, Result};
use crate::exact::scalar::Scalar;
use num::bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Exponent vector aligned with a `Poly`'s variable list.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    /// Sorted variable names; every exponent vector has this length.
    vars: Arc<Vec<String>>,
    /// Monomial -> nonzero coefficient.
    terms: BTreeMap<Exponents, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly {
            vars: Arc::new(Vec::new()),
            terms,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Scalar::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Scalar::one());
        Poly {
            vars: Arc::new(vec![name.to_string()]),
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The constant value, when this polynomial has degree 0.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn expect_scalar(&self, context: &str) -> Result<Scalar> {
        self.as_scalar()
            .ok_or_else(|| Error::ParametricEntries(format!("{context}: `{self}`")))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Degree in a single variable (0 when the variable is absent).
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.binary_search_by(|v| v.as_str().cmp(var)) {
            Ok(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Re-express over a superset of variables (callers must pass a sorted
    /// superset). Internal building block for arithmetic.
    fn embed(&self, vars: &Arc<Vec<String>>) -> BTreeMap<Exponents, Scalar> {
        if *self.vars == **vars {
            return self.terms.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("embed: missing variable"))
            .collect();
        let mut out = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &p) in positions.iter().enumerate() {
                e[p] = exp[i];
            }
            out.insert(e, c.clone());
        }
        out
    }

    fn union_vars(&self, other: &Poly) -> Arc<Vec<String>> {
        if *self.vars == *other.vars {
            return self.vars.clone();
        }
        if other.vars.is_empty() {
            return self.vars.clone();
        }
        if self.vars.is_empty() {
            return other.vars.clone();
        }
        let set: BTreeSet<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        Arc::new(set.into_iter().collect())
    }

    /// Drop variables that no longer occur and prune zero coefficients.
    fn normalize(vars: Arc<Vec<String>>, mut terms: BTreeMap<Exponents, Scalar>) -> Poly {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Poly::zero();
        }
        let n = vars.len();
        let mut used = vec![false; n];
        for exp in terms.keys() {
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return Poly { vars, terms };
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let new_vars: Vec<String> = keep.iter().map(|&i| vars[i].clone()).collect();
        let new_terms = terms
            .into_iter()
            .map(|(exp, c)| (keep.iter().map(|&i| exp[i]).collect(), c))
            .collect();
        Poly {
            vars: Arc::new(new_vars),
            terms: new_terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let vars = self.union_vars(other);
        let mut terms = self.embed(&vars);
        for (e, c) in other.embed(&vars) {
            let entry = terms.entry(e).or_insert_with(Scalar::zero);
            *entry += &c;
        }
        Poly::normalize(vars, terms)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let vars = self.union_vars(other);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut terms: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(Scalar::zero);
                *entry += &(ca * cb);
            }
        }
        Poly::normalize(vars, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute polynomials for variables. Unmapped variables stay in
    /// place; the substitution is a ring homomorphism.
    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> Poly {
        if self.vars.iter().all(|v| !map.contains_key(v)) {
            return self.clone();
        }
        let mut acc = Poly::zero();
        for (exp, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match map.get(&self.vars[i]) {
                    Some(p) => p.clone(),
                    None => Poly::var(&self.vars[i]),
                };
                term = term.mul(&base.pow(e));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Full evaluation at scalar values. Errors if any variable is missing
    /// from the assignment.
    pub fn eval(&self, values: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (exp, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values.get(&self.vars[i]).ok_or_else(|| {
                    Error::Parse(format!("no value for variable `{}`", self.vars[i]))
                })?;
                t = &t * &v.pow(e);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Coefficient of a monomial given as (var, exponent) pairs; pairs may
    /// omit variables (treated as exponent 0).
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> Scalar {
        let mut target = vec![0u32; self.vars.len()];
        for (name, e) in monomial {
            match self.vars.binary_search_by(|v| v.as_str().cmp(name)) {
                Ok(i) => target[i] = *e,
                Err(_) => {
                    if *e != 0 {
                        return Scalar::zero();
                    }
                }
            }
        }
        self.terms.get(&target).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Build from raw aligned terms; normalizes (prunes zeros, trims unused
    /// variables). Internal constructor for the division/Gröbner machinery.
    pub(crate) fn from_terms(vars: Arc<Vec<String>>, terms: BTreeMap<Exponents, Scalar>) -> Poly {
        Poly::normalize(vars, terms)
    }

    /// Parse an expression such as `2/3*a1*a2^2 - b1 + 1`. Every identifier
    /// becomes a variable; `/` requires a constant divisor.
    pub fn parse(input: &str) -> Result<Poly> {
        Parser::new(input)?.parse_expr_complete()
    }

    /// Parse a linear combination of `basis` names with polynomial
    /// coefficients, e.g. `a1*x1 + 2*v1 - w3`. Returns one coefficient per
    /// basis name; identifiers outside `basis` are treated as parameters.
    pub fn parse_combination(input: &str, basis: &[String]) -> Result<Vec<Poly>> {
        let p = Poly::parse(input)?;
        let mut out = vec![Poly::zero(); basis.len()];
        if p.is_zero() {
            return Ok(out);
        }
        let basis_pos: Vec<Option<usize>> = p
            .vars
            .iter()
            .map(|v| basis.iter().position(|b| b == v))
            .collect();
        for (exp, c) in &p.terms {
            let mut slot = None;
            for (i, &e) in exp.iter().enumerate() {
                if let Some(b) = basis_pos[i] {
                    if e == 1 && slot.is_none() {
                        slot = Some((i, b));
                    } else if e > 0 {
                        return Err(Error::Parse(format!(
                            "`{input}`: term is not linear in basis names"
                        )));
                    }
                }
            }
            let (i, b) = slot.ok_or_else(|| {
                Error::Parse(format!("`{input}`: term without a basis name"))
            })?;
            let mut e2 = exp.clone();
            e2[i] = 0;
            let mut coeff_terms = BTreeMap::new();
            coeff_terms.insert(e2, c.clone());
            let coeff = Poly::normalize(p.vars.clone(), coeff_terms);
            out[b] = out[b].add(&coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then reverse map order, for stable
        // human-readable output.
        let mut entries: Vec<(&Exponents, &Scalar)> = self.terms.iter().collect();
        entries.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (exp, c)) in entries.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let is_const = exp.iter().all(|&e| e == 0);
            let coeff_one = a.is_one();
            if !coeff_one || is_const {
                if a.denom() == &BigInt::from(1) {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [u32],
            coef: &'a Scalar,
        }
        let order = MonomialOrder::default_for(&self.vars);
        let mut entries: Vec<(&Exponents, &Scalar)> = self.terms.iter().collect();
        entries.sort_by(|a, b| order.compare(a.0, b.0).reverse());
        let terms: Vec<Term> = entries
            .into_iter()
            .map(|(e, c)| Term { exp: e, coef: c })
            .collect();
        let mut st = s.serialize_struct("Poly", 2)?;
        st.serialize_field("vars", &*self.vars)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct TermIn {
            exp: Vec<u32>,
            coef: Scalar,
        }
        #[derive(Deserialize)]
        struct PolyIn {
            vars: Vec<String>,
            terms: Vec<TermIn>,
        }
        let raw = PolyIn::deserialize(d)?;
        let mut acc = Poly::zero();
        for t in raw.terms {
            if t.exp.len() != raw.vars.len() {
                return Err(D::Error::custom("term exponent length != vars length"));
            }
            let mut m = Poly::constant(t.coef);
            for (v, &e) in raw.vars.iter().zip(&t.exp) {
                if e > 0 {
                    m = m.mul(&Poly::var(v).pow(e));
                }
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }
}

/// Term orders used by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    /// Graded reverse lexicographic (the default).
    GrevLex,
    /// Pure lexicographic; used for elimination.
    Lex,
}

/// A monomial order together with a variable priority list (highest first).
#[derive(Clone, Debug)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Positions into the aligned variable list, highest priority first.
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// Default order: grevlex with alphabetical priority (the variable list
    /// itself is alphabetical, so the priority permutation is the identity).
    pub fn default_for(vars: &[String]) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            priority: (0..vars.len()).collect(),
        }
    }

    /// Order with an explicit priority list. Names in `priority` come first
    /// (highest), remaining variables follow alphabetically.
    pub fn with_priority(kind: OrderKind, vars: &[String], priority: &[&str]) -> Result<Self> {
        let mut order: Vec<usize> = Vec::with_capacity(vars.len());
        for name in priority {
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("priority variable `{name}` not present")))?;
            if order.contains(&i) {
                return Err(Error::Parse(format!("duplicate priority variable `{name}`")));
            }
            order.push(i);
        }
        for i in 0..vars.len() {
            if !order.contains(&i) {
                order.push(i);
            }
        }
        Ok(MonomialOrder {
            kind,
            priority: order,
        })
    }

    /// Key vector whose natural lexicographic comparison agrees with this
    /// order, so ordered maps can keep terms sorted without a comparator.
    pub fn key(&self, exp: &[u32]) -> Vec<u32> {
        match self.kind {
            OrderKind::Lex => self.priority.iter().map(|&i| exp[i]).collect(),
            OrderKind::GrevLex => {
                let mut k = Vec::with_capacity(exp.len() + 1);
                k.push(exp.iter().sum());
                for &i in self.priority.iter().rev() {
                    k.push(u32::MAX - exp[i]);
                }
                k
            }
        }
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Reverse-lex tie break: the last (lowest-priority) position
                // where they differ decides, with the smaller exponent
                // winning.
                for &i in self.priority.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let chars: Vec<char> = input.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    tokens.push(Token::Plus);
                    i += 1;
                }
                '-' => {
                    tokens.push(Token::Minus);
                    i += 1;
                }
                '*' => {
                    tokens.push(Token::Star);
                    i += 1;
                }
                '/' => {
                    tokens.push(Token::Slash);
                    i += 1;
                }
                '^' => {
                    tokens.push(Token::Caret);
                    i += 1;
                }
                '(' => {
                    tokens.push(Token::LParen);
                    i += 1;
                }
                ')' => {
                    tokens.push(Token::RParen);
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    tokens.push(Token::Num(text.parse().unwrap()));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                    {
                        i += 1;
                    }
                    tokens.push(Token::Ident(chars[start..i].iter().collect()));
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character `{other}` in `{input}`"
                    )))
                }
            }
        }
        Ok(Parser { tokens, pos: 0 })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_expr_complete(&mut self) -> Result<Poly> {
        let p = self.parse_expr()?;
        if self.pos != self.tokens.len() {
            return Err(Error::Parse("trailing tokens in expression".into()));
        }
        Ok(p)
    }

    fn parse_expr(&mut self) -> Result<Poly> {
        let mut acc = self.parse_term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.next();
                    acc = acc.add(&self.parse_term()?);
                }
                Token::Minus => {
                    self.next();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.parse_factor()?);
                }
                Some(Token::Slash) => {
                    self.next();
                    let divisor = self.parse_factor()?;
                    let c = divisor
                        .as_scalar()
                        .ok_or_else(|| Error::Parse("divisor must be constant".into()))?;
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&c.recip()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        match self.next() {
            Some(Token::Minus) => Ok(self.parse_factor()?.neg()),
            Some(Token::Num(n)) => {
                let base = Poly::constant(Scalar::try_ratio(n, BigInt::from(1))?);
                self.parse_power(base)
            }
            Some(Token::Ident(name)) => {
                let base = Poly::var(&name);
                self.parse_power(base)
            }
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                match self.next() {
                    Some(Token::RParen) => self.parse_power(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn parse_power(&mut self, base: Poly) -> Result<Poly> {
        if let Some(Token::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Token::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = p("2/3*a1*a2^2 - b1 + 1");
        assert_eq!(f.vars(), &["a1", "a2", "b1"]);
        assert_eq!(f.total_degree(), 3);
        assert_eq!(f.to_string(), "2/3*a1*a2^2 - b1 + 1");
        assert_eq!(p("0"), Poly::zero());
        assert_eq!(p("-(x - y)"), p("y - x"));
        assert_eq!(p("x/2 + x/2"), p("x"));
        assert!(Poly::parse("x/y").is_err());
        assert!(Poly::parse("x +").is_err());
    }

    #[test]
    fn arithmetic_trims_unused_variables() {
        let f = p("x + y").sub(&p("y"));
        assert_eq!(f, p("x"));
        assert_eq!(f.vars(), &["x"]);
        let g = p("x*y").mul(&Poly::zero());
        assert!(g.is_zero());
        assert!(g.vars().is_empty());
    }

    #[test]
    fn substitution_is_a_homomorphism_on_a_sample() {
        let f = p("x^2 + 3*x*y - 2");
        let g = p("y - 1");
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), p("u + 1"));
        map.insert("y".to_string(), p("u*v"));
        let lhs = f.mul(&g).substitute(&map);
        let rhs = f.substitute(&map).mul(&g.substitute(&map));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation() {
        let f = p("1/2*l^2 - l + 3");
        let mut vals = BTreeMap::new();
        vals.insert("l".to_string(), Scalar::ratio(3, 2));
        assert_eq!(f.eval(&vals).unwrap(), Scalar::ratio(21, 8));
        assert!(f.eval(&BTreeMap::new()).is_err());
    }

    #[test]
    fn combination_parsing() {
        let basis: Vec<String> = ["v1", "v2", "x1"].iter().map(|s| s.to_string()).collect();
        let coeffs = Poly::parse_combination("a1*x1 + 2*v1 - v2", &basis).unwrap();
        assert_eq!(coeffs[0], p("2"));
        assert_eq!(coeffs[1], p("-1"));
        assert_eq!(coeffs[2], p("a1"));
        assert!(Poly::parse_combination("v1*v2", &basis).is_err());
        assert!(Poly::parse_combination("a1", &basis).is_err());
        let zero = Poly::parse_combination("0", &basis).unwrap();
        assert!(zero.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn grevlex_vs_lex() {
        // vars x < y alphabetically; priority [x, y].
        let vars = vec!["x".to_string(), "y".to_string()];
        let grevlex = MonomialOrder::default_for(&vars);
        let lex = MonomialOrder::with_priority(OrderKind::Lex, &vars, &["x", "y"]).unwrap();
        // x^2 vs x*y: grevlex compares degree (tie), then last differing
        // position: y-exponents 0 vs 1, so x^2 > x*y.
        assert_eq!(grevlex.compare(&[2, 0], &[1, 1]), Ordering::Greater);
        // x vs y^3: grevlex is graded so y^3 wins; lex prefers x.
        assert_eq!(grevlex.compare(&[1, 0], &[0, 3]), Ordering::Less);
        assert_eq!(lex.compare(&[1, 0], &[0, 3]), Ordering::Greater);
    }

    #[test]
    fn serde_round_trip() {
        let f = p("-3/10*a6*a7^2 + 3/4*a5*a7");
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"vars\":[\"a5\",\"a6\",\"a7\"]"));
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
