//! Exact coefficient field.
//!
//! The base field is the Gaussian rationals `Q(i)` ([`GRat`]). For
//! computations whose values genuinely leave `Q(i)` — logarithms of
//! rational eigenvalues, or flows `e^{t mu}` of rational exponents —
//! the field is extended by a single transcendental symbol `T` with a
//! declared exponential structure ([`Symbol`]):
//!
//! * `Log { base }`: `T` stands for `log(base)` with `base` in `Q(i)`,
//!   real positive or unimodular; `exp(k T) = base^k`.
//! * `Exp { den }`: `T` stands for `e^(1/den)`; `exp(m/den) = T^m`.
//!
//! An [`Exact`] value is a reduced ratio of polynomials in `T` over
//! `Q(i)`. Constants are normalized to carry no symbol, so values from
//! different contexts compare correctly; combining two *nonconstant*
//! values with different symbols is a programming error and panics.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Gaussian rational `re + i*im`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GRat { re, im }
    }

    pub fn zero() -> Self {
        GRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GRat::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &GRat) -> GRat {
        GRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &GRat) -> GRat {
        GRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> GRat {
        GRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &GRat) -> GRat {
        GRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn conj(&self) -> GRat {
        GRat::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<GRat> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GRat::new(&self.re / &n, -self.im.clone() / n))
    }

    pub fn pow(&self, k: i64) -> Result<GRat> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = GRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn approx(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "({}+{}*i)", self.re, self.im)
        }
    }
}

/// Dense univariate polynomial over `GRat`, ascending powers, no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct GPoly(pub Vec<GRat>);

impl GPoly {
    pub fn zero() -> Self {
        GPoly(Vec::new())
    }

    pub fn constant(c: GRat) -> Self {
        let mut p = GPoly(vec![c]);
        p.trim();
        p
    }

    pub fn one() -> Self {
        GPoly::constant(GRat::one())
    }

    pub fn monomial(c: GRat, k: usize) -> Self {
        if c.is_zero() {
            return GPoly::zero();
        }
        let mut v = vec![GRat::zero(); k + 1];
        v[k] = c;
        GPoly(v)
    }

    pub fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn constant_value(&self) -> GRat {
        self.0.first().cloned().unwrap_or_else(GRat::zero)
    }

    pub fn add(&self, o: &GPoly) -> GPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_else(GRat::zero);
            let b = o.0.get(k).cloned().unwrap_or_else(GRat::zero);
            v.push(a.add(&b));
        }
        let mut p = GPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> GPoly {
        GPoly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &GPoly) -> GPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &GPoly) -> GPoly {
        if self.is_zero() || o.is_zero() {
            return GPoly::zero();
        }
        let mut v = vec![GRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        let mut p = GPoly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &GRat) -> GPoly {
        let mut p = GPoly(self.0.iter().map(|a| a.mul(c)).collect());
        p.trim();
        p
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &GPoly) -> Result<(GPoly, GPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.clone();
        let mut q = vec![GRat::zero(); self.0.len().saturating_sub(d.0.len()) + 1];
        let dlead = d.0.last().unwrap().clone();
        let dinv = dlead.inv()?;
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.0.len() - d.0.len();
            let coeff = r.0.last().unwrap().mul(&dinv);
            q[shift] = coeff.clone();
            let sub = d.mul(&GPoly::monomial(coeff, shift));
            r = r.sub(&sub);
        }
        let mut qp = GPoly(q);
        qp.trim();
        Ok((qp, r))
    }

    pub fn gcd(&self, o: &GPoly) -> GPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("gcd divisor nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // monic normalization
        let inv = a.0.last().unwrap().inv().expect("nonzero lead");
        a.scale(&inv)
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.0.iter().rev() {
            acc = acc * t + c.approx();
        }
        acc
    }

    /// Conjugate coefficients; `flip` additionally substitutes `T -> -T`.
    pub fn conj(&self, flip: bool) -> GPoly {
        let mut v = Vec::with_capacity(self.0.len());
        for (k, c) in self.0.iter().enumerate() {
            let mut cc = c.conj();
            if flip && k % 2 == 1 {
                cc = cc.neg();
            }
            v.push(cc);
        }
        let mut p = GPoly(v);
        p.trim();
        p
    }
}

/// Interpretation of the extension symbol `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Symbol {
    /// No extension; the value lies in `Q(i)`.
    None,
    /// `T = log(base)`, `base` real positive or unimodular.
    Log { base: GRat },
    /// `T = e^(1/den)`, `den >= 1`.
    Exp { den: u32 },
}

impl Symbol {
    /// Does complex conjugation send `T` to `-T` (true) or fix it (false)?
    fn conj_flips(&self) -> bool {
        match self {
            Symbol::None => false,
            Symbol::Exp { .. } => false,
            Symbol::Log { base } => {
                if base.is_real() && base.re.is_positive() {
                    false
                } else if base.mul(&base.conj()).is_one() {
                    true
                } else {
                    panic!("Symbol::Log base must be real positive or unimodular, got {base}")
                }
            }
        }
    }

    fn numeric(&self) -> Complex64 {
        match self {
            Symbol::None => Complex64::new(0.0, 0.0),
            Symbol::Log { base } => base.approx().ln(),
            Symbol::Exp { den } => Complex64::new((1.0 / *den as f64).exp(), 0.0),
        }
    }

    fn merge<'a>(a: &'a Symbol, b: &'a Symbol) -> &'a Symbol {
        match (a, b) {
            (Symbol::None, s) => s,
            (s, Symbol::None) => s,
            (s, t) if s == t => s,
            (s, t) => panic!("incompatible exact-field symbols: {s:?} vs {t:?}"),
        }
    }
}

/// Element of `Q(i)(T)` as a reduced ratio of polynomials in `T`.
#[derive(Clone, Debug)]
pub struct Exact {
    num: GPoly,
    den: GPoly,
    sym: Symbol,
}

impl Exact {
    fn make(num: GPoly, den: GPoly, sym: Symbol) -> Self {
        assert!(!den.is_zero(), "zero denominator polynomial");
        let mut num = num;
        let mut den = den;
        if num.is_zero() {
            return Exact {
                num,
                den: GPoly::one(),
                sym: Symbol::None,
            };
        }
        let g = num.gcd(&den);
        if !g.is_constant() {
            num = num.divrem(&g).unwrap().0;
            den = den.divrem(&g).unwrap().0;
        }
        // monic denominator
        let lead = den.0.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Exact { num, den, sym }
    }

    /// Tag a symbol-free value with an exact-field context so partial
    /// `exp`/`log` can interpret it. Panics if a different symbol is
    /// already attached.
    pub fn with_symbol(&self, sym: Symbol) -> Exact {
        let merged = Symbol::merge(&self.sym, &sym).clone();
        Exact {
            num: self.num.clone(),
            den: self.den.clone(),
            sym: if Scalar::is_zero(self) { Symbol::None } else { merged },
        }
    }

    pub fn from_grat(c: GRat) -> Self {
        Exact::make(GPoly::constant(c), GPoly::one(), Symbol::None)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Exact::from_grat(GRat::from_ratio(num, den))
    }

    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Exact::from_grat(GRat::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        ))
    }

    /// The symbol `T` itself under the given interpretation.
    pub fn symbol(sym: Symbol) -> Self {
        assert!(sym != Symbol::None, "Symbol::None has no generator");
        Exact::make(GPoly::monomial(GRat::one(), 1), GPoly::one(), sym)
    }

    pub fn symbol_kind(&self) -> &Symbol {
        &self.sym
    }

    /// Constant value if the element lies in `Q(i)`.
    pub fn as_grat(&self) -> Option<GRat> {
        if self.num.is_constant() && self.den.is_constant() {
            let d = self.den.constant_value();
            Some(self.num.constant_value().mul(&d.inv().ok()?))
        } else {
            None
        }
    }

    fn merged_sym(&self, o: &Exact) -> Symbol {
        Symbol::merge(&self.sym, &o.sym).clone()
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        if !(self.sym == other.sym
            || self.sym == Symbol::None
            || other.sym == Symbol::None)
        {
            return false;
        }
        self.num == other.num && self.den == other.den
    }
}

impl std::ops::Add for Exact {
    type Output = Exact;
    fn add(self, o: Exact) -> Exact {
        let sym = self.merged_sym(&o);
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        Exact::make(num, den, sym)
    }
}

impl std::ops::Sub for Exact {
    type Output = Exact;
    fn sub(self, o: Exact) -> Exact {
        self + (-o)
    }
}

impl std::ops::Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact {
            num: self.num.neg(),
            den: self.den,
            sym: self.sym,
        }
    }
}

impl std::ops::Mul for Exact {
    type Output = Exact;
    fn mul(self, o: Exact) -> Exact {
        let sym = self.merged_sym(&o);
        Exact::make(self.num.mul(&o.num), self.den.mul(&o.den), sym)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &GPoly, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for (k, c) in p.0.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match k {
                    0 => write!(f, "{c}")?,
                    1 => write!(f, "{c}*T")?,
                    _ => write!(f, "{c}*T^{k}")?,
                }
            }
            Ok(())
        };
        if self.den == GPoly::one() {
            show(&self.num, f)
        } else {
            write!(f, "(")?;
            show(&self.num, f)?;
            write!(f, ")/(")?;
            show(&self.den, f)?;
            write!(f, ")")
        }
    }
}

impl Scalar for Exact {
    const FLOAT: bool = false;

    fn zero() -> Self {
        Exact::from_grat(GRat::zero())
    }
    fn one() -> Self {
        Exact::from_grat(GRat::one())
    }
    fn from_int(n: i64) -> Self {
        Exact::from_grat(GRat::from_int(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Exact::rational(num, den)
    }
    fn i() -> Self {
        Exact::from_grat(GRat::i())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn conj(&self) -> Self {
        let flip = self.sym.conj_flips();
        Exact::make(
            self.num.conj(flip),
            self.den.conj(flip),
            self.sym.clone(),
        )
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Exact::make(
            self.den.clone(),
            self.num.clone(),
            self.sym.clone(),
        ))
    }

    fn try_exp(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return Some(Scalar::one());
        }
        if !self.den.is_constant() || self.num.degree() > 1 {
            return None;
        }
        let dinv = self.den.constant_value().inv().ok()?;
        let c0 = self
            .num
            .0
            .first()
            .cloned()
            .unwrap_or_else(GRat::zero)
            .mul(&dinv);
        let c1 = self
            .num
            .0
            .get(1)
            .cloned()
            .unwrap_or_else(GRat::zero)
            .mul(&dinv);
        match &self.sym {
            Symbol::None => {
                if c0.is_zero() {
                    Some(Scalar::one())
                } else {
                    None
                }
            }
            Symbol::Log { base } => {
                // exp(c0 + c1 T) = e^{c0} * base^{c1}; need c0 = 0, c1 integer
                if !c0.is_zero() || !c1.is_real() || !c1.re.denom().is_one() {
                    return None;
                }
                let k = c1.re.numer().to_i64()?;
                Some(Exact::from_grat(base.pow(k).ok()?))
            }
            Symbol::Exp { den } => {
                // exp(m/den) = T^m; need c1 = 0 and c0 real with den*c0 integer
                if !c1.is_zero() || !c0.is_real() {
                    return None;
                }
                let scaled = &c0.re * BigRational::from_integer(BigInt::from(*den));
                if !scaled.denom().is_one() {
                    return None;
                }
                let m = scaled.numer().to_i64()?;
                let sym = self.sym.clone();
                if m >= 0 {
                    Some(Exact::make(
                        GPoly::monomial(GRat::one(), m as usize),
                        GPoly::one(),
                        sym,
                    ))
                } else {
                    Some(Exact::make(
                        GPoly::one(),
                        GPoly::monomial(GRat::one(), (-m) as usize),
                        sym,
                    ))
                }
            }
        }
    }

    fn try_log(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        if let Some(c) = self.as_grat() {
            if c.is_one() {
                return Some(Scalar::zero());
            }
            return log_in_context(&c, &self.sym);
        }
        // monomial in T over a monomial in T
        let mono = |p: &GPoly| -> Option<(GRat, usize)> {
            let k = p.degree();
            if p.0.iter().take(k).any(|c| !c.is_zero()) {
                return None;
            }
            Some((p.0[k].clone(), k))
        };
        let (cn, a) = mono(&self.num)?;
        let (cd, b) = mono(&self.den)?;
        if !cn.mul(&cd.inv().ok()?).is_one() {
            return None;
        }
        match &self.sym {
            Symbol::Exp { den } => Some(Exact::from_grat(GRat::new(
                BigRational::new(BigInt::from(a as i64 - b as i64), BigInt::from(*den)),
                BigRational::zero(),
            ))),
            _ => None,
        }
    }

    fn abs(&self) -> f64 {
        self.approx().norm()
    }
    fn im_abs(&self) -> f64 {
        self.approx().im.abs()
    }

    fn approx(&self) -> Complex64 {
        let t = self.sym.numeric();
        self.num.eval(t) / self.den.eval(t)
    }
}

/// Log of a `Q(i)` constant against a `Log` symbol context: finds integer
/// `k` with `value = base^k`, returning `k*T`. Used when reading
/// eigenvalues off exactly-represented diagonals.
pub fn log_in_context(value: &GRat, sym: &Symbol) -> Option<Exact> {
    if value.is_one() {
        return Some(Scalar::zero());
    }
    if let Symbol::Log { base } = sym {
        let t = Exact::symbol(sym.clone());
        let mut acc = GRat::one();
        for k in 1..=128i64 {
            acc = acc.mul(base);
            if acc == *value {
                return Some(t.scale_int(k));
            }
        }
        let binv = base.inv().ok()?;
        let mut acc = GRat::one();
        for k in 1..=128i64 {
            acc = acc.mul(&binv);
            if acc == *value {
                return Some(t.scale_int(-k));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Exact {
        Exact::rational(n, d)
    }

    #[test]
    fn field_arithmetic() {
        let a = q(3, 2);
        let b = q(-1, 3);
        assert_eq!(a.clone() + b.clone(), q(7, 6));
        assert_eq!(a.clone() * b.clone(), q(-1, 2));
        assert_eq!(a.clone().div(&b).unwrap(), q(-9, 2));
        assert!(Scalar::is_zero(&(a.clone() - a)));
    }

    #[test]
    fn gaussian_conj() {
        let z = Exact::gaussian(1, 2, -3, 4);
        let w = z.clone() * z.conj();
        // |1/2 - 3i/4|^2 = 1/4 + 9/16 = 13/16
        assert_eq!(w, q(13, 16));
        assert!(w.is_real());
    }

    #[test]
    fn log_symbol_exp() {
        // T = log 2
        let t = Exact::symbol(Symbol::Log {
            base: GRat::from_int(2),
        });
        let e2t = t.scale_int(2).try_exp().unwrap();
        assert_eq!(e2t, q(4, 1));
        // (e^{2T} - 1)/(2T) = 3/(2T)
        let beta = t.scale_int(2);
        let phi = (e2t - Scalar::one()).div(&beta).unwrap();
        let expect = q(3, 1).div(&t.scale_int(2)).unwrap();
        assert_eq!(phi, expect);
        assert!((Scalar::abs(&phi) - 3.0 / (2.0 * 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn exp_symbol_roundtrip() {
        // T = e^{1/3}; exp(5/3) = T^5, log back
        let s = Symbol::Exp { den: 3 };
        let mu = q(5, 3).with_symbol(s);
        let lam = mu.try_exp().unwrap();
        assert_eq!(lam.try_log().unwrap(), q(5, 3));
        assert_eq!(lam.clone() * lam.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn unimodular_conjugation() {
        // T = log i = i pi/2; conj(T) = -T
        let t = Exact::symbol(Symbol::Log { base: GRat::i() });
        assert_eq!(t.conj(), -t.clone());
        let it = Exact::i() * t.clone();
        assert!(it.is_real());
        assert_eq!(t.scale_int(4).try_exp().unwrap(), Scalar::one());
        assert_eq!(t.scale_int(2).try_exp().unwrap(), Exact::from_int(-1));
    }

    #[test]
    fn rational_function_reduction() {
        let t = Exact::symbol(Symbol::Log {
            base: GRat::from_int(2),
        });
        let a = t.clone() * t.clone() - Scalar::one();
        let b = t.clone() - Scalar::one();
        let c = a.div(&b).unwrap();
        assert_eq!(c, t.clone() + Scalar::one());
    }

    #[test]
    fn log_in_context_powers() {
        let sym = Symbol::Log {
            base: GRat::from_int(2),
        };
        let t = Exact::symbol(sym.clone());
        assert_eq!(
            log_in_context(&GRat::from_int(8), &sym).unwrap(),
            t.scale_int(3)
        );
        assert_eq!(
            log_in_context(&GRat::from_ratio(1, 4), &sym).unwrap(),
            t.scale_int(-2)
        );
    }
}
