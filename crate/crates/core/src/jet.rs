//! Truncated multivariate polynomial (jet) algebra in `2n` phase-space
//! variables `x_1..x_n, xi_1..xi_n`, graded by total degree.
//!
//! Storage is sparse and exponent-keyed with graded-lexicographic
//! iteration order, so outputs are reproducible bit for bit. All
//! arithmetic closes at the truncation order: degrees above `trunc`
//! are discarded.

use crate::error::{Error, Result};
use crate::mapjet::MapJet;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Monomial exponent vector, ordered by total degree then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Mono {
    deg: u16,
    exps: Vec<u8>,
}

impl Mono {
    pub fn new(exps: Vec<u8>) -> Self {
        let deg = exps.iter().map(|&e| e as u16).sum();
        Mono { deg, exps }
    }

    pub fn constant(nvars: usize) -> Self {
        Mono::new(vec![0; nvars])
    }

    pub fn deg(&self) -> u32 {
        self.deg as u32
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a + b)
            .collect();
        Mono::new(exps)
    }

    fn with_step(&self, v: usize, delta: i32) -> Mono {
        let mut exps = self.exps.clone();
        exps[v] = (exps[v] as i32 + delta) as u8;
        Mono::new(exps)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let n = self.exps.len() / 2;
        let mut first = true;
        for (v, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if v < n {
                write!(f, "x{}", v + 1)?;
            } else {
                write!(f, "xi{}", v - n + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Truncated polynomial in `2n` variables over the scalar `C`.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet<C: Scalar> {
    n: usize,
    trunc: u32,
    terms: BTreeMap<Mono, C>,
}

impl<C: Scalar> Jet<C> {
    pub fn zero(n: usize, trunc: u32) -> Self {
        Jet {
            n,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, trunc: u32, c: C) -> Self {
        let mut j = Jet::zero(n, trunc);
        if !c.is_zero() {
            j.terms.insert(Mono::constant(2 * n), c);
        }
        j
    }

    pub fn one(n: usize, trunc: u32) -> Self {
        Jet::constant(n, trunc, C::one())
    }

    /// Coordinate function for variable index `v` in `0..2n`
    /// (`0..n` are `x_j`, `n..2n` are `xi_j`).
    pub fn var(n: usize, trunc: u32, v: usize) -> Self {
        assert!(v < 2 * n, "variable index out of range");
        let mut exps = vec![0u8; 2 * n];
        exps[v] = 1;
        let mut j = Jet::zero(n, trunc);
        if trunc >= 1 {
            j.terms.insert(Mono::new(exps), C::one());
        }
        j
    }

    pub fn x(n: usize, trunc: u32, j: usize) -> Self {
        Jet::var(n, trunc, j)
    }

    pub fn xi(n: usize, trunc: u32, j: usize) -> Self {
        Jet::var(n, trunc, n + j)
    }

    pub fn from_terms<I>(n: usize, trunc: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, C)>,
    {
        let mut j = Jet::zero(n, trunc);
        for (exps, c) in terms {
            assert_eq!(exps.len(), 2 * n, "exponent vector length must be 2n");
            let m = Mono::new(exps);
            if m.deg() <= trunc && !c.is_zero() {
                j.add_term(m, c);
            }
        }
        j
    }

    pub fn n_dof(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u8]) -> C {
        self.terms
            .get(&Mono::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn coeff_mono(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, m: Mono, c: C) {
        if m.deg() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn set_coeff(&mut self, exps: &[u8], c: C) {
        let m = Mono::new(exps.to_vec());
        if m.deg() > self.trunc {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    /// Constant term.
    pub fn eval0(&self) -> C {
        self.coeff_mono(&Mono::constant(2 * self.n))
    }

    pub fn scale(&self, c: &C) -> Jet<C> {
        if c.is_zero() {
            return Jet::zero(self.n, self.trunc);
        }
        let mut out = Jet::zero(self.n, self.trunc);
        for (m, a) in &self.terms {
            let v = a.clone() * c.clone();
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul(&self, o: &Jet<C>) -> Jet<C> {
        self.compat(o);
        let mut out = Jet::zero(self.n, self.trunc.min(o.trunc));
        for (ma, ca) in &self.terms {
            if ma.deg() > out.trunc {
                continue;
            }
            for (mb, cb) in &o.terms {
                if ma.deg() + mb.deg() > out.trunc {
                    continue;
                }
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    fn compat(&self, o: &Jet<C>) {
        assert_eq!(self.n, o.n, "jet dof mismatch");
    }

    /// Clone truncated at a (possibly lower) degree.
    pub fn truncated(&self, trunc: u32) -> Jet<C> {
        let mut out = Jet::zero(self.n, trunc);
        for (m, c) in &self.terms {
            if m.deg() <= trunc {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Same terms, higher formal truncation order. The caller asserts the
    /// omitted degrees are genuinely zero (exact polynomial data).
    pub fn with_trunc(&self, trunc: u32) -> Jet<C> {
        let mut out = self.truncated(trunc.min(self.trunc));
        out.trunc = trunc;
        out
    }

    /// Homogeneous part of total degree `m`.
    pub fn grade(&self, m: u32) -> Jet<C> {
        let mut out = Jet::zero(self.n, self.trunc);
        for (mo, c) in &self.terms {
            if mo.deg() == m {
                out.terms.insert(mo.clone(), c.clone());
            }
        }
        out
    }

    /// Lowest total degree present, if nonzero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.deg())
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.deg())
    }

    /// Partial derivative with respect to variable index `v`.
    pub fn deriv(&self, v: usize) -> Jet<C> {
        let mut out = Jet::zero(self.n, self.trunc);
        for (m, c) in &self.terms {
            let e = m.exps[v];
            if e == 0 {
                continue;
            }
            out.add_term(m.with_step(v, -1), c.scale_int(e as i64));
        }
        out
    }

    /// Poisson bracket `{a, b} = sum_j d_xi_j(a) d_x_j(b) - d_x_j(a) d_xi_j(b)`.
    pub fn poisson(&self, o: &Jet<C>) -> Result<Jet<C>> {
        if self.n != o.n {
            return Err(Error::MismatchedDof(self.n, o.n));
        }
        let mut out = Jet::zero(self.n, self.trunc.min(o.trunc));
        for j in 0..self.n {
            let t1 = self.deriv(self.n + j).mul(&o.deriv(j));
            let t2 = self.deriv(j).mul(&o.deriv(self.n + j));
            out = &out + &(&t1 - &t2);
        }
        Ok(out)
    }

    /// Taylor expansion of `self ∘ m`, truncated. Requires `m` to fix
    /// the origin so degrees are graded.
    pub fn compose(&self, m: &MapJet<C>) -> Result<Jet<C>> {
        if self.n != m.n_dof() {
            return Err(Error::MismatchedDof(self.n, m.n_dof()));
        }
        let trunc = self.trunc.min(m.trunc());
        let mut powers: Vec<Vec<Jet<C>>> = (0..2 * self.n)
            .map(|_| vec![Jet::one(self.n, trunc)])
            .collect();
        let mut out = Jet::zero(self.n, trunc);
        for (mono, c) in &self.terms {
            if mono.deg() > trunc {
                continue;
            }
            let mut prod = Jet::constant(self.n, trunc, c.clone());
            for (v, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let last = powers[v].last().unwrap();
                    let next = last.mul(m.component(v));
                    powers[v].push(next);
                }
                prod = prod.mul(&powers[v][e as usize]);
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Coefficient-wise complex conjugation; for real coordinates this is
    /// conjugation of the function.
    pub fn conj(&self) -> Jet<C> {
        let mut out = Jet::zero(self.n, self.trunc);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.conj());
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Map coefficients into another scalar type.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Jet<D> {
        let mut out = Jet::zero(self.n, self.trunc);
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    /// Max coefficient magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// Max imaginary-part magnitude over coefficients.
    pub fn imag_norm(&self) -> f64 {
        self.terms.values().map(|c| c.im_abs()).fold(0.0, f64::max)
    }

    /// True if all coefficients of degree `<= deg` agree.
    pub fn equal_up_to(&self, o: &Jet<C>, deg: u32) -> bool {
        if self.n != o.n {
            return false;
        }
        let d = self.sub_ref(o);
        d.terms.keys().all(|m| m.deg() > deg)
    }

    fn sub_ref(&self, o: &Jet<C>) -> Jet<C> {
        self.compat(o);
        let mut out = self.truncated(self.trunc.max(o.trunc));
        out.trunc = self.trunc.max(o.trunc);
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> std::ops::Add for &Jet<C> {
    type Output = Jet<C>;
    fn add(self, o: &Jet<C>) -> Jet<C> {
        self.compat(o);
        let mut out = self.truncated(self.trunc.min(o.trunc));
        out.trunc = self.trunc.min(o.trunc);
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> std::ops::Sub for &Jet<C> {
    type Output = Jet<C>;
    fn sub(self, o: &Jet<C>) -> Jet<C> {
        self + &(-o)
    }
}

impl<C: Scalar> std::ops::Neg for &Jet<C> {
    type Output = Jet<C>;
    fn neg(self) -> Jet<C> {
        let mut out = Jet::zero(self.n, self.trunc);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> fmt::Display for Jet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.deg() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Exact;

    fn q(n: i64, d: i64) -> Exact {
        Exact::rational(n, d)
    }

    fn x(tr: u32) -> Jet<Exact> {
        Jet::x(1, tr, 0)
    }

    fn xi(tr: u32) -> Jet<Exact> {
        Jet::xi(1, tr, 0)
    }

    #[test]
    fn bracket_convention() {
        // {x, xi} = -1 under {a,b} = d_xi a d_x b - d_x a d_xi b
        let b = x(4).poisson(&xi(4)).unwrap();
        assert_eq!(b, Jet::constant(1, 4, q(-1, 1)));
    }

    #[test]
    fn bracket_xxi_x() {
        // {x xi, x} = x
        let xxi = x(4).mul(&xi(4));
        let b = xxi.poisson(&x(4)).unwrap();
        assert_eq!(b, x(4));
    }

    #[test]
    fn antisymmetry_on_random() {
        let a = Jet::from_terms(
            1,
            5,
            vec![
                (vec![2, 1], q(3, 2)),
                (vec![0, 3], q(-1, 5)),
                (vec![1, 1], q(7, 1)),
            ],
        );
        let b = a.poisson(&a).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn multiplication_truncates() {
        let a = x(3);
        let b = a.mul(&a).mul(&a).mul(&a); // x^4 beyond trunc 3
        assert!(b.is_zero());
        let c = x(4).mul(&x(4)).mul(&x(4)).mul(&x(4));
        assert_eq!(c.coeff(&[4, 0]), q(1, 1));
    }

    #[test]
    fn derivative_and_grading() {
        let p = Jet::from_terms(1, 6, vec![(vec![3, 2], q(1, 1))]);
        let d = p.deriv(0);
        assert_eq!(d.coeff(&[2, 2]), q(3, 1));
        assert_eq!(p.grade(5).num_terms(), 1);
        assert_eq!(p.grade(4).num_terms(), 0);
        assert_eq!(p.min_degree(), Some(5));
    }

    #[test]
    fn mono_order_is_graded_lex() {
        let a = Mono::new(vec![0, 2]);
        let b = Mono::new(vec![1, 0]);
        assert!(b < a); // degree 1 before degree 2
        let c = Mono::new(vec![2, 0]);
        let d = Mono::new(vec![1, 1]);
        assert!(d < c); // same degree, lex on exponents
    }
}
