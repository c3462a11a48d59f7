use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::parse::ParseError;
use super::rational::{parse_rational, Rational};
use super::scalar::Scalar;
use super::upoly::{integer_scale, UPoly};

/// Errors of ring arithmetic and of affine elimination over a local ring.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("{0} is not a unit of the local ring")]
    NotAUnit(String),
    #[error("operands belong to different rings ({0} and {1})")]
    MixedRing(String, String),
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("row {row} reduces to the unit constraint {constant} = 0")]
    InconsistentOverField { row: usize, constant: String },
    #[error("denominator {den} vanishes at t = {center}")]
    DenominatorVanishes { den: String, center: Rational },
    #[error("cannot map {element} into {target}")]
    Incompatible { element: String, target: String },
}

/// The local ring `K`, `K[t]` localized at `t = c`, or `K[t]/((t-c)^s)`.
///
/// Elements are stored in the recentered variable `u = t - c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalRing {
    param: Option<String>,
    relation: Option<u32>,
    center: Rational,
}

impl LocalRing {
    /// The base field.
    pub fn field() -> Arc<Self> {
        Arc::new(LocalRing { param: None, relation: None, center: Rational::zero() })
    }

    /// `K[t]` localized at `t = center`.
    pub fn free(name: &str, center: Rational) -> Arc<Self> {
        Arc::new(LocalRing { param: Some(name.to_string()), relation: None, center })
    }

    /// `K[u]/(u^s)` with `u = t - center`; `s = 1` collapses to the field.
    pub fn truncated(name: &str, s: u32, center: Rational) -> Arc<Self> {
        assert!(s >= 1, "relation exponent must be positive");
        if s == 1 {
            return Self::field();
        }
        Arc::new(LocalRing { param: Some(name.to_string()), relation: Some(s), center })
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    pub fn relation(&self) -> Option<u32> {
        self.relation
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn is_field(&self) -> bool {
        self.param.is_none()
    }

    pub fn is_free(&self) -> bool {
        self.param.is_some() && self.relation.is_none()
    }

    /// Variable name used when rendering elements.
    pub fn var_name(&self) -> &str {
        match &self.param {
            Some(p) if self.center.is_zero() => p,
            _ => "u",
        }
    }

    /// `K`, `K[u]_(u)` or `K[u]/(u^S)`.
    pub fn render(&self) -> String {
        match (&self.param, self.relation) {
            (None, _) => "K".into(),
            (Some(_), None) => "K[u]_(u)".into(),
            (Some(_), Some(s)) => format!("K[u]/(u^{s})"),
        }
    }

    /// Description of the recentered variable, e.g. `u = t - 1/10`.
    pub fn describe_variable(&self) -> Option<String> {
        let p = self.param.as_ref()?;
        Some(if self.center.is_zero() {
            format!("u = {p}")
        } else if self.center.is_negative() {
            format!("u = {p} + {}", -self.center.clone())
        } else {
            format!("u = {p} - {}", self.center)
        })
    }

    /// K-dimension of the ring as a vector space (`None` if infinite).
    pub fn k_dimension(&self) -> Option<usize> {
        match (&self.param, self.relation) {
            (None, _) => Some(1),
            (Some(_), Some(s)) => Some(s as usize),
            (Some(_), None) => None,
        }
    }

    pub fn constant(self: &Arc<Self>, q: Rational) -> RingElement {
        RingElement { ring: self.clone(), num: UPoly::constant(q), den: UPoly::one() }
    }

    /// The recentered variable `u`; panics in the field.
    pub fn u(self: &Arc<Self>) -> RingElement {
        assert!(self.param.is_some(), "the field has no parameter");
        RingElement::canonical(self.clone(), UPoly::x(), UPoly::one())
    }

    /// The parameter value `t = center + u`.
    pub fn t(self: &Arc<Self>) -> RingElement {
        self.u().plus(&self.constant(self.center.clone()))
    }

    /// The element `num(t) / den(t)` given in the original parameter.
    pub fn from_t_fraction(
        self: &Arc<Self>,
        num: &UPoly,
        den: &UPoly,
    ) -> Result<RingElement, RingError> {
        let n = num.taylor_shift(&self.center);
        let d = den.taylor_shift(&self.center);
        if d.coeff(0).is_zero() {
            return Err(RingError::DenominatorVanishes {
                den: den.render("t"),
                center: self.center.clone(),
            });
        }
        if self.is_field() {
            return Ok(self.constant(n.coeff(0) / d.coeff(0)));
        }
        Ok(RingElement::canonical(self.clone(), n, d))
    }

    /// Element given by recentered numerator and denominator.
    pub fn from_u_fraction(self: &Arc<Self>, num: UPoly, den: UPoly) -> Result<RingElement, RingError> {
        if den.coeff(0).is_zero() {
            return Err(RingError::NotAUnit(den.render(self.var_name())));
        }
        if self.is_field() {
            return Ok(self.constant(num.coeff(0) / den.coeff(0)));
        }
        Ok(RingElement::canonical(self.clone(), num, den))
    }
}

impl fmt::Display for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Element of a [`LocalRing`] in canonical form.
///
/// In a truncated ring the numerator is the power series modulo `u^s` and the
/// denominator is 1. In the localized polynomial ring the fraction is reduced,
/// a constant denominator is absorbed, and otherwise numerator and denominator
/// carry jointly coprime integer coefficients with positive constant term in
/// the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Arc<LocalRing>,
    num: UPoly,
    den: UPoly,
}

impl RingElement {
    fn canonical(ring: Arc<LocalRing>, num: UPoly, den: UPoly) -> Self {
        assert!(!den.coeff(0).is_zero(), "denominator must be a unit");
        if ring.param.is_none() {
            assert!(num.is_constant() && den.is_constant(), "non-constant element of the field");
            let q = num.coeff(0) / den.coeff(0);
            return RingElement { ring, num: UPoly::constant(q), den: UPoly::one() };
        }
        if let Some(s) = ring.relation {
            let s = s as usize;
            let n = num.mul_trunc(&den.series_inverse(s), s);
            return RingElement { ring, num: n, den: UPoly::one() };
        }
        if num.is_zero() {
            return RingElement { ring, num, den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.divrem(&g).0, den.divrem(&g).0);
        if d.is_constant() {
            let c = Rational::one() / d.coeff(0);
            return RingElement { ring, num: n.scale(&c), den: UPoly::one() };
        }
        let mut m = integer_scale(&[&n, &d]);
        if d.coeff(0).is_negative() {
            m = -m;
        }
        n = n.scale(&m);
        d = d.scale(&m);
        RingElement { ring, num: n, den: d }
    }

    pub fn ring(&self) -> &Arc<LocalRing> {
        &self.ring
    }

    /// Numerator in the recentered variable.
    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    /// Denominator in the recentered variable (a unit).
    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    fn same_ring(&self, o: &RingElement) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(RingError::MixedRing(self.ring.render(), o.ring.render()))
        }
    }

    fn expect_same(&self, o: &RingElement) {
        if let Err(e) = self.same_ring(o) {
            panic!("{e}");
        }
    }

    pub fn try_add(&self, o: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(o)?;
        Ok(self.plus(o))
    }

    pub fn try_mul(&self, o: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(o)?;
        Ok(self.times(o))
    }

    pub fn is_unit(&self) -> bool {
        !self.num.coeff(0).is_zero()
    }

    /// Value at the closed point.
    pub fn residue(&self) -> Rational {
        self.num.coeff(0) / self.den.coeff(0)
    }

    /// Order of vanishing at the closed point; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.num.valuation()
    }

    pub fn inv(&self) -> Result<RingElement, RingError> {
        if !self.is_unit() {
            return Err(RingError::NotAUnit(self.to_string()));
        }
        Ok(RingElement::canonical(self.ring.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = RingElement::one_of(&self.ring);
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }

    /// Maps the element into `target`: recentering a localized fraction,
    /// imposing a relation, or evaluating into the field.
    pub fn map_into(&self, target: &Arc<LocalRing>) -> Result<RingElement, RingError> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        let incompatible = || RingError::Incompatible {
            element: self.to_string(),
            target: target.render(),
        };
        if self.ring.is_field() || target.is_field() {
            return Ok(target.constant(self.residue()));
        }
        let delta = target.center.clone() - &self.ring.center;
        if self.ring.relation.is_some() && !delta.is_zero() {
            return Err(incompatible());
        }
        if let (Some(s), Some(s2)) = (self.ring.relation, target.relation) {
            if s2 > s {
                return Err(incompatible());
            }
        }
        if self.ring.relation.is_some() && target.is_free() {
            return Err(incompatible());
        }
        let n = self.num.taylor_shift(&delta);
        let d = self.den.taylor_shift(&delta);
        if d.coeff(0).is_zero() {
            return Err(RingError::DenominatorVanishes {
                den: self.den.render(self.ring.var_name()),
                center: target.center.clone(),
            });
        }
        target.from_u_fraction(n, d)
    }

    pub fn render(&self) -> String {
        let v = self.ring.var_name();
        if self.den.is_one() {
            self.num.render(v)
        } else {
            format!("({}) / ({})", self.num.render(v), self.den.render(v))
        }
    }

    /// Parses `p`, `(p) / (q)` with polynomials in the ring's rendering variable.
    pub fn parse(ring: &Arc<LocalRing>, text: &str) -> Result<RingElement, ParseError> {
        let s = text.trim();
        let v = ring.var_name().to_string();
        let (n, d) = match split_fraction(s) {
            Some((n, d)) => (UPoly::parse(&v, n)?, UPoly::parse(&v, d)?),
            None if ring.is_field() => (UPoly::constant(parse_rational_expr(s)?), UPoly::one()),
            None => (UPoly::parse(&v, s)?, UPoly::one()),
        };
        if ring.is_field() && !(n.is_constant() && d.is_constant()) {
            return Err(ParseError::new(format!("'{text}' is not a constant")));
        }
        ring.from_u_fraction(n, d)
            .map_err(|e| ParseError::new(format!("'{text}': {e}")))
    }
}

fn parse_rational_expr(s: &str) -> Result<Rational, ParseError> {
    if let Ok(q) = parse_rational(s) {
        return Ok(q);
    }
    let p = UPoly::parse("t", s)?;
    if !p.is_constant() {
        return Err(ParseError::new(format!("'{s}' is not a constant")));
    }
    Ok(p.coeff(0))
}

/// Splits `(a) / (b)` at the top-level slash.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    if !s.starts_with('(') || !s.ends_with(')') {
        return None;
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                let (a, b) = (s[..i].trim(), s[i + 1..].trim());
                let a = a.strip_prefix('(')?.strip_suffix(')')?;
                let b = b.strip_prefix('(')?.strip_suffix(')')?;
                return Some((a, b));
            }
            _ => {}
        }
    }
    None
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for UPoly {
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Scalar for RingElement {
    type Ctx = Arc<LocalRing>;

    fn ctx(&self) -> Arc<LocalRing> {
        self.ring.clone()
    }
    fn from_rational(ctx: &Arc<LocalRing>, q: &Rational) -> Self {
        ctx.constant(q.clone())
    }
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.expect_same(o);
        if self.den == o.den {
            return RingElement::canonical(self.ring.clone(), &self.num + &o.num, self.den.clone());
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RingElement::canonical(self.ring.clone(), n, &self.den * &o.den)
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        self.expect_same(o);
        RingElement::canonical(self.ring.clone(), &self.num * &o.num, &self.den * &o.den)
    }
    fn negated(&self) -> Self {
        RingElement { ring: self.ring.clone(), num: -&self.num, den: self.den.clone() }
    }
}

/// Splits `p(center + u) = u^s · unit(u)` with `unit(0) ≠ 0`.
pub fn strip_unit(p: &UPoly, center: &Rational) -> Result<(usize, UPoly), RingError> {
    if p.is_zero() {
        return Err(RingError::ZeroPolynomial);
    }
    let q = p.taylor_shift(center);
    let s = q.valuation().expect("nonzero");
    Ok((s, q.shift_down(s)))
}

/// A row of the eliminated system with no unit pivot:
/// `constant + Σ coeffs[k].1 · x_{coeffs[k].0} = 0`, all coefficients in the
/// maximal ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct Leftover {
    pub row: usize,
    pub constant: RingElement,
    pub coeffs: Vec<(usize, RingElement)>,
}

/// Result of [`solve_affine`].
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    /// `(row, column)` of every pivot in the order chosen.
    pub pivots: Vec<(usize, usize)>,
    pub free_columns: Vec<usize>,
    /// Solution with every free column set to zero.
    pub particular: Vec<RingElement>,
    /// One kernel vector per free column, with a 1 in that column.
    pub kernel: Vec<Vec<RingElement>>,
    pub leftovers: Vec<Leftover>,
}

/// Solves `m · x = rhs` over a local ring, pivoting only on units.
///
/// Columns are scanned in order; the pivot of a column is the first remaining
/// row holding a unit there.
pub fn solve_affine(
    ring: &Arc<LocalRing>,
    m: &[Vec<RingElement>],
    rhs: &[RingElement],
) -> Result<AffineSolution, RingError> {
    assert_eq!(m.len(), rhs.len(), "row count mismatch");
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<RingElement>> = m.to_vec();
    let mut b: Vec<RingElement> = rhs.to_vec();
    for (row, bi) in a.iter().zip(&b) {
        assert_eq!(row.len(), cols, "ragged system");
        for x in row.iter().chain(std::iter::once(bi)) {
            if x.ring != *ring {
                return Err(RingError::MixedRing(x.ring.render(), ring.render()));
            }
        }
    }
    let mut used = vec![false; a.len()];
    let mut pivots = Vec::new();
    let mut free_columns = Vec::new();
    for c in 0..cols {
        let Some(r) = (0..a.len()).find(|&r| !used[r] && a[r][c].is_unit()) else {
            free_columns.push(c);
            continue;
        };
        let inv = a[r][c].inv()?;
        for x in a[r].iter_mut() {
            *x = x.times(&inv);
        }
        b[r] = b[r].times(&inv);
        let prow = a[r].clone();
        let pb = b[r].clone();
        for r2 in 0..a.len() {
            if r2 == r || a[r2][c].vanishes() {
                continue;
            }
            let f = a[r2][c].clone();
            for k in 0..cols {
                if !prow[k].vanishes() {
                    a[r2][k] = a[r2][k].minus(&f.times(&prow[k]));
                }
            }
            b[r2] = b[r2].minus(&f.times(&pb));
        }
        used[r] = true;
        pivots.push((r, c));
    }
    let zero = RingElement::zero_of(ring);
    let mut particular = vec![zero.clone(); cols];
    for &(r, c) in &pivots {
        particular[c] = b[r].clone();
    }
    let mut kernel = Vec::new();
    for &f in &free_columns {
        let mut v = vec![zero.clone(); cols];
        v[f] = RingElement::one_of(ring);
        for &(r, c) in &pivots {
            v[c] = a[r][f].negated();
        }
        kernel.push(v);
    }
    let mut leftovers = Vec::new();
    for r in (0..a.len()).filter(|&r| !used[r]) {
        let constant = b[r].negated();
        let coeffs: Vec<(usize, RingElement)> = free_columns
            .iter()
            .filter(|&&f| !a[r][f].vanishes())
            .map(|&f| (f, a[r][f].clone()))
            .collect();
        if constant.vanishes() && coeffs.is_empty() {
            continue;
        }
        if constant.is_unit() {
            return Err(RingError::InconsistentOverField { row: r, constant: constant.to_string() });
        }
        leftovers.push(Leftover { row: r, constant, coeffs });
    }
    Ok(AffineSolution { pivots, free_columns, particular, kernel, leftovers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn truncated_products() {
        let r = LocalRing::truncated("t", 2, int(0));
        let a = r.constant(int(1)).minus(&r.t());
        let b = r.constant(int(1)).plus(&r.t());
        assert_eq!(a.times(&b), RingElement::one_of(&r));
    }

    #[test]
    fn inverse_in_localization() {
        let r = LocalRing::free("t", int(0));
        let two_plus_t = r.constant(int(2)).plus(&r.t());
        let inv = two_plus_t.inv().unwrap();
        assert_eq!(inv.render(), "(1) / (2 + t)");
        assert_eq!(inv.times(&two_plus_t), RingElement::one_of(&r));
        assert!(matches!(r.t().inv(), Err(RingError::NotAUnit(_))));
        let x = r.constant(int(2)).minus(&r.t().scaled(&int(5))).times(&inv);
        assert_eq!(x.render(), "(2 - 5t) / (2 + t)");
    }

    #[test]
    fn strip_examples() {
        let p = &UPoly::monomial(int(9), 5) * &UPoly::from_ints(&[-1, 10]);
        let (s, u) = strip_unit(&p, &int(0)).unwrap();
        assert_eq!((s, u), (5, UPoly::from_ints(&[-9, 90])));
        assert_eq!(strip_unit(&p, &rat(1, 10)).unwrap().0, 1);
        assert_eq!(strip_unit(&UPoly::from_ints(&[7]), &int(3)).unwrap(), (0, UPoly::from_ints(&[7])));
        assert_eq!(strip_unit(&UPoly::zero(), &int(0)), Err(RingError::ZeroPolynomial));
    }

    #[test]
    fn parse_round_trip() {
        let r = LocalRing::free("t", int(0));
        for s in ["(2 - 5t) / (2 + t)", "1 - 3t", "(3/2)t^2", "0", "-1/2"] {
            let e = RingElement::parse(&r, s).unwrap();
            assert_eq!(RingElement::parse(&r, &e.render()).unwrap(), e);
        }
        let k = LocalRing::field();
        assert_eq!(RingElement::parse(&k, "-7/3").unwrap(), k.constant(rat(-7, 3)));
    }

    #[test]
    fn recentering() {
        let r = LocalRing::free("t", int(0));
        let x = r.constant(int(10)).times(&r.t()).minus(&r.constant(int(1)));
        let r2 = LocalRing::free("t", rat(1, 10));
        let y = x.map_into(&r2).unwrap();
        assert_eq!(y.render(), "10u");
        let k = LocalRing::field();
        assert_eq!(y.map_into(&k).unwrap(), k.constant(int(0)));
    }

    fn el(r: &Arc<LocalRing>, s: &str) -> RingElement {
        RingElement::parse(r, s).unwrap()
    }

    #[test]
    fn affine_first_tower_systems() {
        let r = LocalRing::free("t", int(0));
        // Columns X17, X26, X35. Rows: X17 = 1, then the two Jacobi relations.
        let m = vec![
            vec![el(&r, "1"), el(&r, "0"), el(&r, "0")],
            vec![el(&r, "-1 + t"), el(&r, "1"), el(&r, "1")],
            vec![el(&r, "-t"), el(&r, "0"), el(&r, "1")],
        ];
        let rhs = vec![el(&r, "1"), el(&r, "0"), el(&r, "0")];
        let sol = solve_affine(&r, &m, &rhs).unwrap();
        assert_eq!(sol.particular[1], el(&r, "1 - 2t"));
        assert_eq!(sol.particular[2], el(&r, "t"));
        assert!(sol.leftovers.is_empty() && sol.kernel.is_empty());

        // Columns X18, X27, X36 with the relation t X27 - X36 = 0 left over.
        let m = vec![
            vec![el(&r, "1"), el(&r, "0"), el(&r, "0")],
            vec![el(&r, "-1 + 2t"), el(&r, "1"), el(&r, "1")],
            vec![el(&r, "-t"), el(&r, "0"), el(&r, "1")],
            vec![el(&r, "0"), el(&r, "t"), el(&r, "-1")],
        ];
        let rhs = vec![el(&r, "1"), el(&r, "0"), el(&r, "0"), el(&r, "0")];
        let sol = solve_affine(&r, &m, &rhs).unwrap();
        assert_eq!(sol.particular[1], el(&r, "1 - 3t"));
        assert_eq!(sol.particular[2], el(&r, "t"));
        assert_eq!(sol.leftovers.len(), 1);
        assert_eq!(sol.leftovers[0].constant, el(&r, "-3t^2"));
    }

    #[test]
    fn affine_identity_and_inconsistent() {
        let k = LocalRing::field();
        let m = vec![vec![k.constant(int(1))]];
        let sol = solve_affine(&k, &m, &[k.constant(int(5))]).unwrap();
        assert_eq!(sol.particular, vec![k.constant(int(5))]);
        assert!(sol.kernel.is_empty());
        let m = vec![vec![k.constant(int(1))], vec![k.constant(int(1))]];
        let res = solve_affine(&k, &m, &[k.constant(int(1)), k.constant(int(2))]);
        assert!(matches!(res, Err(RingError::InconsistentOverField { .. })));
    }
}
