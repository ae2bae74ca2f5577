//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial in graded-lexicographic
//! order, so equal polynomials have identical internal layout and serialize
//! identically. Coefficients are never zero and are always in lowest terms.

use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::scalar::Ring;
use crate::var::VarId;

/// Product of variable powers; exponents positive, variables sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(mut powers: Vec<(VarId, u32)>) -> Self {
        powers.retain(|&(_, e)| e > 0);
        powers.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((last, le)) if *last == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut ia, mut ib) = (0, 0);
        while ia < self.0.len() || ib < other.0.len() {
            match (self.0.get(ia), other.0.get(ib)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        ia += 1;
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        ib += 1;
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        ia += 1;
                        ib += 1;
                    }
                },
                (Some(&p), None) => {
                    out.push(p);
                    ia += 1;
                }
                (None, Some(&p)) => {
                    out.push(p);
                    ib += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Monomial with the power of `v` lowered by one (used by derivatives).
    fn without_one(&self, v: VarId) -> Monomial {
        let mut out = self.0.clone();
        for entry in out.iter_mut() {
            if entry.0 == v {
                entry.1 -= 1;
            }
        }
        out.retain(|&(_, e)| e > 0);
        Monomial(out)
    }
}

/// Graded-lexicographic: total degree first, then the earlier variable with
/// the higher exponent wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut ia, mut ib) = (0, 0);
        loop {
            match (self.0.get(ia), other.0.get(ib)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        ia += 1;
                        ib += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        Poly { terms }
    }

    pub fn from_int(v: i64) -> Self {
        Poly::constant(Rat::from_int(v))
    }

    pub fn var(v: VarId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Highest power of `v` in any term; `0` if absent, `-1` for zero.
    pub fn degree_in(&self, v: VarId) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.terms
            .keys()
            .map(|m| m.degree_in(v) as i64)
            .max()
            .unwrap_or(0)
    }

    /// All variables that occur with positive power.
    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|&(v, _)| v))
            .collect()
    }

    /// Board size shared by the board variables, if any occur.
    pub fn board(&self) -> Option<usize> {
        self.vars().into_iter().find_map(|v| v.board())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (m.clone(), q * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at a full assignment of the occurring variables.
    pub fn eval(&self, point: &BTreeMap<VarId, Rat>) -> Result<Rat> {
        self.eval_with(Rat::clone, &mut |v| {
            point.get(&v).cloned().ok_or(Error::MissingAssignment(v))
        })
    }

    /// Evaluation into any commutative ring: coefficients are lifted with
    /// `lift`, variables resolved with `value_of`.
    pub fn eval_with<T: Ring>(
        &self,
        lift: impl Fn(&Rat) -> T,
        value_of: &mut impl FnMut(VarId) -> Result<T>,
    ) -> Result<T> {
        let mut acc = T::zero();
        let mut powers: HashMap<(VarId, u32), T> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = lift(c);
            for &(v, e) in m.exponents() {
                let key = (v, e);
                let p = match powers.get(&key) {
                    Some(p) => p.clone(),
                    None => {
                        let base = value_of(v)?;
                        let p = ring_pow(base, e);
                        powers.insert(key, p.clone());
                        p
                    }
                };
                term = term * p;
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e == 0 {
                continue;
            }
            out.add_term(m.without_one(v), c * &Rat::from_int(e as i64));
        }
        out
    }

    /// Replaces variables by polynomials. `map` returning `None` keeps the
    /// variable as itself.
    pub fn substitute(&self, map: &impl Fn(VarId) -> Option<Poly>) -> Poly {
        let mut powers: HashMap<(VarId, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.exponents() {
                let image = powers
                    .entry((v, e))
                    .or_insert_with(|| match map(v) {
                        Some(p) => p.pow(e),
                        None => Poly::from_terms([(
                            Monomial::from_powers(vec![(v, e)]),
                            Rat::one(),
                        )]),
                    })
                    .clone();
                term = &term * &image;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Renames variables term-by-term; `None` sends the variable (and every
    /// term containing it) to zero. Cheaper than full substitution.
    pub fn remap_vars(&self, map: &impl Fn(VarId) -> Option<VarId>) -> Poly {
        let mut out = Poly::zero();
        'term: for (m, c) in &self.terms {
            let mut powers = Vec::with_capacity(m.exponents().len());
            for &(v, e) in m.exponents() {
                match map(v) {
                    Some(w) => powers.push((w, e)),
                    None => continue 'term,
                }
            }
            out.add_term(Monomial::from_powers(powers), c.clone());
        }
        out
    }
}

fn ring_pow<T: Ring>(base: T, e: u32) -> T {
    let mut result = T::one();
    let mut base = base;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    result
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        // Iterate the smaller operand outside.
        let (small, large) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly::zero();
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                out.add_term(ms.mul(ml), cs * cl);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                for (j, &(v, e)) in m.exponents().iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{v}")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(String),
    Var(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '+' => {
                tokens.push(Token::Plus);
                pos += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                pos += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                pos += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                pos += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                pos += 1;
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                tokens.push(Token::Int(text[start..pos].to_string()));
            }
            'a'..='z' => {
                let start = pos;
                pos += 1;
                while pos < bytes.len() && bytes[pos] == b'[' {
                    while pos < bytes.len() && bytes[pos] != b']' {
                        pos += 1;
                    }
                    if pos == bytes.len() {
                        return Err(Error::parse(format!(
                            "unterminated variable at byte {start} in {text:?}"
                        )));
                    }
                    pos += 1;
                }
                tokens.push(Token::Var(text[start..pos].to_string()));
            }
            _ => {
                return Err(Error::parse(format!(
                    "unexpected character {c:?} at byte {pos} in {text:?}"
                )))
            }
        }
    }
    Ok(tokens)
}

impl Poly {
    /// Parses the text format: a signed sum of terms, each a `*`-separated
    /// product of a rational coefficient and powered variables, e.g.
    /// `3/2*x[1][1]^2 - x[1][2]*x[2][1]`. Variables are validated against
    /// board size `n`.
    pub fn parse(text: &str, n: usize) -> Result<Poly> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(Error::parse("empty polynomial"));
        }
        let mut out = Poly::zero();
        let mut pos = 0;
        let mut first = true;
        while pos < tokens.len() {
            let mut negative = false;
            loop {
                match tokens.get(pos) {
                    Some(Token::Plus) => pos += 1,
                    Some(Token::Minus) => {
                        negative = !negative;
                        pos += 1;
                    }
                    Some(_) if first || negative || matches!(tokens.get(pos - 1), Some(Token::Plus | Token::Minus)) => {
                        break
                    }
                    Some(_) => {
                        return Err(Error::parse(format!(
                            "expected '+' or '-' between terms in {text:?}"
                        )))
                    }
                    None => return Err(Error::parse(format!("dangling sign in {text:?}"))),
                }
            }
            first = false;
            let mut coeff = Rat::one();
            let mut powers: Vec<(VarId, u32)> = Vec::new();
            loop {
                match tokens.get(pos) {
                    Some(Token::Int(num)) => {
                        pos += 1;
                        let mut text_num = num.clone();
                        if let (Some(Token::Slash), Some(Token::Int(den))) =
                            (tokens.get(pos), tokens.get(pos + 1))
                        {
                            text_num = format!("{num}/{den}");
                            pos += 2;
                        }
                        coeff = coeff * Rat::parse(&text_num)?;
                    }
                    Some(Token::Var(name)) => {
                        pos += 1;
                        let v = VarId::parse(name, n)?;
                        let mut exp = 1u32;
                        if let Some(Token::Caret) = tokens.get(pos) {
                            pos += 1;
                            match tokens.get(pos) {
                                Some(Token::Int(e)) => {
                                    exp = e.parse::<u32>().map_err(|_| {
                                        Error::parse(format!("bad exponent {e:?}"))
                                    })?;
                                    pos += 1;
                                }
                                _ => {
                                    return Err(Error::parse(format!(
                                        "missing exponent after '^' in {text:?}"
                                    )))
                                }
                            }
                        }
                        powers.push((v, exp));
                    }
                    other => {
                        return Err(Error::parse(format!(
                            "unexpected token {other:?} in term of {text:?}"
                        )))
                    }
                }
                match tokens.get(pos) {
                    Some(Token::Star) => pos += 1,
                    _ => break,
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::from_powers(powers), coeff);
        }
        Ok(out)
    }

    /// JSON form: array of `{"coeff": "p/q", "exps": [["x[1][1]", 2], ...]}`
    /// with terms in descending graded-lex order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let exps: Vec<serde_json::Value> = m
                    .exponents()
                    .iter()
                    .map(|&(v, e)| serde_json::json!([v.to_string(), e]))
                    .collect();
                serde_json::json!({ "coeff": c.to_string(), "exps": exps })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(value: &serde_json::Value, n: usize) -> Result<Poly> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::parse("polynomial JSON must be an array of terms"))?;
        let mut out = Poly::zero();
        for term in arr {
            let coeff = term
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::parse("term missing string field 'coeff'"))?;
            let coeff = Rat::parse(coeff)?;
            let exps = term
                .get("exps")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::parse("term missing array field 'exps'"))?;
            let mut powers = Vec::with_capacity(exps.len());
            for pair in exps {
                let pair = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::parse("exps entries must be [var, power] pairs"))?;
                let var = pair[0]
                    .as_str()
                    .ok_or_else(|| Error::parse("variable must be a string"))?;
                let power = pair[1]
                    .as_u64()
                    .ok_or_else(|| Error::parse("power must be a nonnegative integer"))?;
                powers.push((VarId::parse(var, n)?, power as u32));
            }
            out.add_term(Monomial::from_powers(powers), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, a: usize, b: usize) -> Poly {
        Poly::var(VarId::x(n, a, b))
    }

    fn s(n: usize, k: usize, i: usize) -> Poly {
        Poly::var(VarId::s(n, k, i))
    }

    fn point_2x2(vals: [[i64; 2]; 2]) -> BTreeMap<VarId, Rat> {
        let mut p = BTreeMap::new();
        for a in 1..=2 {
            for b in 1..=2 {
                p.insert(VarId::x(2, a, b), Rat::from_int(vals[a - 1][b - 1]));
            }
        }
        p
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = x(2, 1, 1);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn multiplication_distributes() {
        let p = &x(2, 2, 1) * &(&x(2, 1, 1) + &x(2, 2, 2));
        let q = &(&x(2, 2, 1) * &x(2, 1, 1)) + &(&x(2, 2, 1) * &x(2, 2, 2));
        assert_eq!(p, q);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn multiplication_by_zero_absorbs() {
        let p = &x(2, 1, 2) + &Poly::from_int(3);
        assert!((&p * &Poly::zero()).is_zero());
    }

    #[test]
    fn eval_reads_coordinates() {
        let a = point_2x2([[1, 2], [3, 4]]);
        assert_eq!(x(2, 2, 1).eval(&a).unwrap(), Rat::from_int(3));
        let f = &x(2, 2, 1) * &(&x(2, 1, 1) + &x(2, 2, 2));
        assert_eq!(f.eval(&a).unwrap(), Rat::from_int(15));
        assert_eq!(Poly::zero().eval(&a).unwrap(), Rat::zero());
    }

    #[test]
    fn eval_missing_assignment() {
        let f = x(2, 1, 2);
        let err = f.eval(&BTreeMap::new()).unwrap_err();
        assert_eq!(err, Error::MissingAssignment(VarId::x(2, 1, 2)));
    }

    #[test]
    fn partial_derivatives() {
        let f = &x(2, 2, 1) * &x(2, 1, 1);
        assert_eq!(f.partial(VarId::x(2, 1, 1)), x(2, 2, 1));
        let g = &s(3, 1, 0) * &s(3, 2, 1);
        assert_eq!(g.partial(VarId::s(3, 2, 1)), s(3, 1, 0));
        assert!(Poly::from_int(5).partial(VarId::x(2, 1, 1)).is_zero());
    }

    #[test]
    fn degree_in_with_sentinel() {
        let g = &s(3, 1, 0) * &s(3, 2, 1);
        assert_eq!(g.degree_in(VarId::s(3, 2, 1)), 1);
        assert_eq!(x(2, 2, 1).degree_in(VarId::x(2, 1, 1)), 0);
        assert_eq!(Poly::zero().degree_in(VarId::x(2, 1, 1)), -1);
    }

    #[test]
    fn display_canonical() {
        let det2 = &(&x(2, 1, 1) * &x(2, 2, 2)) - &(&x(2, 1, 2) * &x(2, 2, 1));
        assert_eq!(det2.to_string(), "x[1][1]*x[2][2] - x[1][2]*x[2][1]");
        let c = Poly::constant(Rat::new(-3, 2));
        assert_eq!(c.to_string(), "-3/2");
        assert_eq!(Poly::zero().to_string(), "0");
        let sq = &x(2, 1, 1).scale(&Rat::new(3, 2)) * &x(2, 1, 1);
        assert_eq!(sq.to_string(), "3/2*x[1][1]^2");
    }

    #[test]
    fn parse_round_trip_examples() {
        for text in [
            "x[1][1]*x[2][2] - x[1][2]*x[2][1]",
            "3/2*x[1][1]^2 - 1",
            "0",
            "-s[1][0]*s[2][0]",
            "x[2][1]",
            "5",
        ] {
            let p = Poly::parse(text, 2).unwrap();
            assert_eq!(p.to_string(), text, "round trip through {text:?}");
            let q = Poly::parse(&p.to_string(), 2).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Poly::parse("", 2).is_err());
        assert!(Poly::parse("x[3][1]", 2).is_err());
        assert!(Poly::parse("x[1][1] ^", 2).is_err());
        assert!(Poly::parse("1 +", 2).is_err());
        assert!(Poly::parse("q[1][1]", 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let det2 = &(&x(2, 1, 1) * &x(2, 2, 2)) - &(&x(2, 1, 2) * &x(2, 2, 1));
        let json = det2.to_json();
        let back = Poly::from_json(&json, 2).unwrap();
        assert_eq!(det2, back);
        assert_eq!(json.to_string(), back.to_json().to_string());
    }

    #[test]
    fn substitute_expands() {
        // x11 -> x11 + t*x21 keeps x21 fixed.
        let t = Poly::var(VarId::param(0));
        let image = &x(2, 1, 1) + &(&t * &x(2, 2, 1));
        let f = &x(2, 1, 1) * &x(2, 2, 1);
        let g = f.substitute(&|v| (v == VarId::x(2, 1, 1)).then(|| image.clone()));
        let expect = &image * &x(2, 2, 1);
        assert_eq!(g, expect);
    }

    #[test]
    fn remap_kills_and_renames() {
        let f = &(&x(2, 1, 1) * &x(2, 2, 1)) + &(&x(2, 2, 1) * &x(2, 2, 2));
        let g = f.remap_vars(&|v| {
            if v == VarId::x(2, 1, 1) {
                None
            } else if v == VarId::x(2, 2, 1) {
                Some(VarId::s(2, 1, 0))
            } else {
                Some(v)
            }
        });
        let expect = &s(2, 1, 0) * &x(2, 2, 2);
        assert_eq!(g, expect);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_rat() -> impl Strategy<Value = Rat> {
            (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Rat::new(p, q))
        }

        fn arb_var() -> impl Strategy<Value = VarId> {
            prop_oneof![
                (1usize..=3, 1usize..=3).prop_map(|(a, b)| VarId::x(3, a, b)),
                (1usize..=3).prop_flat_map(|k| (Just(k), 0usize..k))
                    .prop_map(|(k, i)| VarId::s(3, k, i)),
            ]
        }

        fn arb_poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec(
                (
                    arb_rat(),
                    prop::collection::vec((arb_var(), 1u32..=3), 0..=3),
                ),
                0..=4,
            )
            .prop_map(|terms| {
                Poly::from_terms(
                    terms
                        .into_iter()
                        .map(|(c, powers)| (Monomial::from_powers(powers), c)),
                )
            })
        }

        fn full_point() -> BTreeMap<VarId, Rat> {
            let mut point = BTreeMap::new();
            let mut seed = 1i64;
            for a in 1..=3usize {
                for b in 1..=3usize {
                    point.insert(VarId::x(3, a, b), Rat::new(seed, 2));
                    seed += 1;
                }
            }
            for k in 1..=3usize {
                for i in 0..k {
                    point.insert(VarId::s(3, k, i), Rat::new(seed, 3));
                    seed += 1;
                }
            }
            point
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(&p + &q, &q + &p);
                prop_assert_eq!(&p * &q, &q * &p);
                prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
                prop_assert!((&p - &p).is_zero());
            }

            #[test]
            fn eval_is_ring_homomorphism(p in arb_poly(), q in arb_poly()) {
                let point = full_point();
                let pv = p.eval(&point).unwrap();
                let qv = q.eval(&point).unwrap();
                prop_assert_eq!((&p + &q).eval(&point).unwrap(), pv.clone() + qv.clone());
                prop_assert_eq!((&p * &q).eval(&point).unwrap(), pv * qv);
            }

            #[test]
            fn serialization_round_trips(p in arb_poly()) {
                let text = p.to_string();
                let parsed = Poly::parse(&text, 3).unwrap();
                prop_assert_eq!(&parsed, &p);
                prop_assert_eq!(parsed.to_string(), text);
                let back = Poly::from_json(&p.to_json(), 3).unwrap();
                prop_assert_eq!(back, p);
            }

            #[test]
            fn leibniz_rule(p in arb_poly(), q in arb_poly(), v in arb_var()) {
                let lhs = (&p * &q).partial(v);
                let rhs = &(&p.partial(v) * &q) + &(&p * &q.partial(v));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
