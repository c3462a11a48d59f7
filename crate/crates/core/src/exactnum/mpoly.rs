use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::parse::{parse_terms, ParseError};
use super::rational::Rational;
use super::scalar::Scalar;

/// Sparse multivariate polynomial over the rationals on a fixed, ordered
/// variable list. Binary operations require identical variable lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Graded lexicographic comparison: higher total degree first, then the
/// exponent of earlier variables decides.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl MultiPoly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<Vec<String>>, q: Rational) -> Self {
        let mut p = Self::zero(vars);
        let e = vec![0; p.vars.len()];
        p.add_term(e, q);
        p
    }

    /// The variable `name`; panics if it is not in `vars`.
    pub fn var(vars: Arc<Vec<String>>, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical graded-lex order.
    pub fn terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(a.0, b.0));
        v
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_vars(&self, o: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut p = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * q);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates with the given values, one per variable, in any coefficient ring.
    pub fn eval_in<C: Scalar>(&self, ctx: &C::Ctx, values: &[C]) -> C {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = C::zero_of(ctx);
        for (e, c) in &self.terms {
            let mut t = C::from_rational(ctx, c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.times(&values[i]);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.eval_in(&(), values)
    }

    /// Replaces the variable `name` by the constant `q`.
    pub fn substitute(&self, name: &str, q: &Rational) -> Self {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return self.clone();
        };
        let mut p = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let mut f = c.clone();
            for _ in 0..k {
                f *= q;
            }
            p.add_term(e2, f);
        }
        p
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let constant = e.iter().all(|&k| k == 0);
            if constant || !a.is_one() {
                factors.push(a.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{k}", self.vars[i])),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn parse(vars: Arc<Vec<String>>, text: &str) -> Result<Self, ParseError> {
        let mut p = Self::zero(vars.clone());
        for (c, vs) in parse_terms(text)? {
            let mut e = vec![0u32; vars.len()];
            for (name, k) in vs {
                let i = vars.iter().position(|v| *v == name).ok_or_else(|| {
                    ParseError::new(format!("unknown variable '{name}' in '{text}'"))
                })?;
                e[i] += k;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.check_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.check_vars(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.check_vars(o);
        let mut p = MultiPoly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
