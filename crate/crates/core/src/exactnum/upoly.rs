use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::parse::{coef_prefix, parse_terms, ParseError};
use super::rational::Rational;

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::new(vec![q])
    }

    /// `c · x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `x^k`; the low coefficients are discarded.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Reduction modulo `x^s`.
    pub fn truncate(&self, s: usize) -> Self {
        Self::new(self.coeffs.iter().take(s).cloned().collect())
    }

    /// Taylor shift: the polynomial `u ↦ p(u + c)`.
    pub fn taylor_shift(&self, c: &Rational) -> Self {
        let mut acc = UPoly::zero();
        let lin = UPoly::new(vec![c.clone(), Rational::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(a.clone());
        }
        acc
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = Rational::one() / d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = Rational::one() / a.leading();
            a.scale(&l)
        }
    }

    /// Power series inverse modulo `x^s`; requires a nonzero constant term.
    pub fn series_inverse(&self, s: usize) -> UPoly {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inverse of a non-unit");
        let inv0 = Rational::one() / &c0;
        let mut out = vec![Rational::zero(); s];
        if s == 0 {
            return UPoly::zero();
        }
        out[0] = inv0.clone();
        for k in 1..s {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = self.coeff(j);
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out[k] = -acc * &inv0;
        }
        UPoly::new(out)
    }

    pub fn mul_trunc(&self, other: &UPoly, s: usize) -> UPoly {
        (self * other).truncate(s)
    }

    /// Least positive rational `m` such that `m · p` has coprime integer
    /// coefficients.
    pub fn integer_scale(&self) -> Rational {
        integer_scale(&[self])
    }

    /// All rational roots, sorted increasingly, without multiplicity.
    /// Returns `None` when the coefficients are too large to enumerate
    /// divisor candidates.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut roots = Vec::new();
        let v = self.valuation().unwrap();
        if v > 0 {
            roots.push(Rational::zero());
        }
        let p = self.shift_down(v);
        if p.degree() == Some(0) {
            return Some(roots);
        }
        let ip = p.scale(&p.integer_scale());
        let a0 = ip.coeff(0).to_integer().abs();
        let an = ip.leading().to_integer().abs();
        let num_divs = divisors(&a0)?;
        let den_divs = divisors(&an)?;
        for pn in &num_divs {
            for qd in &den_divs {
                if pn.gcd(qd) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = Rational::new(pn * BigInt::from(sign), qd.clone());
                    if ip.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Some(roots)
    }

    /// Renders in ascending degree with variable `var`, e.g. `2 - 5t + (3/2)t^2`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coef_prefix(&a));
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the rendering produced by [`UPoly::render`] (and similar input).
    pub fn parse(var: &str, text: &str) -> Result<UPoly, ParseError> {
        let mut acc = UPoly::zero();
        for (c, vars) in parse_terms(text)? {
            let mut k = 0usize;
            for (name, e) in vars {
                if name != var {
                    return Err(ParseError::new(format!(
                        "unknown variable '{name}' (expected '{var}') in '{text}'"
                    )));
                }
                k += e as usize;
            }
            acc = &acc + &UPoly::monomial(c, k);
        }
        Ok(acc)
    }
}

/// Least positive rational `m` making every listed polynomial integral with
/// jointly coprime coefficients.
pub(crate) fn integer_scale(polys: &[&UPoly]) -> Rational {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for p in polys {
        for c in &p.coeffs {
            l = l.lcm(c.denom());
        }
    }
    for p in polys {
        for c in &p.coeffs {
            let v = (c * Rational::from_integer(l.clone())).to_integer();
            g = g.gcd(&v);
        }
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(l, g)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d)? <= n {
        if d > 10_000_000 {
            return None;
        }
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn render_parse() {
        let p = UPoly::new(vec![int(2), int(-5), rat(3, 2)]);
        assert_eq!(p.render("t"), "2 - 5t + (3/2)t^2");
        assert_eq!(UPoly::parse("t", &p.render("t")).unwrap(), p);
        assert_eq!(UPoly::zero().render("u"), "0");
        assert_eq!(UPoly::parse("t", "0").unwrap(), UPoly::zero());
        assert!(UPoly::parse("t", "2 + x").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = UPoly::from_ints(&[2, 2]).gcd(&UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(g, UPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn taylor_and_series() {
        let p = UPoly::from_ints(&[0, 0, 1]);
        assert_eq!(p.taylor_shift(&int(1)), UPoly::from_ints(&[1, 2, 1]));
        let d = UPoly::from_ints(&[2, 1]);
        let inv = d.series_inverse(4);
        assert_eq!(d.mul_trunc(&inv, 4), UPoly::one());
    }

    #[test]
    fn roots() {
        // 9t^5(10t - 1)
        let p = &UPoly::monomial(int(9), 5) * &UPoly::from_ints(&[-1, 10]);
        assert_eq!(p.rational_roots().unwrap(), vec![int(0), rat(1, 10)]);
        let q = UPoly::from_ints(&[-2, 0, 1]);
        assert!(q.rational_roots().unwrap().is_empty());
    }
}
