//! Symbolic expressions for the q-side formulas.
//!
//! Every closed form is written once as an [`Expr`] tree. The same tree is
//! evaluated exactly (with `q` or one parameter left symbolic) and inspected
//! for degree bounds in any parameter, so grid sizes come from the formula
//! that is actually evaluated.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{rat, rational_pow, Frac, LaurentPoly, RationalFunc};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Expr {
    Const(BigRational),
    QPow(i64),
    Var(Arc<str>),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Neg(Box<Expr>),
    Quot(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    /// `(base; q^step)_count`
    Poch {
        base: Box<Expr>,
        step: i64,
        count: usize,
    },
    Series(Box<Series>),
    /// A fixed rational function of `q`.
    Fixed(Arc<RationalFunc>),
}

/// `Σ_{k=0}^{truncation} (upper; q^s)_k / ((q^s; q^s)_k (lower; q^s)_k) z^k`
#[derive(Clone, Debug)]
pub struct Series {
    pub upper: Vec<Expr>,
    pub lower: Vec<Expr>,
    pub step: i64,
    pub argument: Expr,
    pub truncation: usize,
}

pub fn k(n: i64) -> Expr {
    Expr::Const(rat(n))
}

pub fn kr(c: BigRational) -> Expr {
    Expr::Const(c)
}

pub fn qp(e: i64) -> Expr {
    Expr::QPow(e)
}

pub fn fixed(r: RationalFunc) -> Expr {
    Expr::Fixed(Arc::new(r))
}

pub fn var(name: &str) -> Expr {
    Expr::Var(Arc::from(name))
}

pub fn poch(base: Expr, step: i64, count: usize) -> Expr {
    Expr::Poch {
        base: Box::new(base),
        step,
        count,
    }
}

/// `[n] = (1 - q^n) / (1 - q)`, written as the quotient.
pub fn qint(n: i64) -> Expr {
    (k(1) - qp(n)) / (k(1) - qp(1))
}

pub fn series(
    upper: Vec<Expr>,
    lower: Vec<Expr>,
    step: i64,
    argument: Expr,
    truncation: usize,
) -> Expr {
    Expr::Series(Box::new(Series {
        upper,
        lower,
        step,
        argument,
        truncation,
    }))
}

impl Expr {
    pub fn pow(self, e: i32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn inv(self) -> Expr {
        k(1) / self
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        match self {
            Expr::Sum(mut v) => {
                v.push(o);
                Expr::Sum(v)
            }
            s => Expr::Sum(vec![s, o]),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        self + (-o)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        match self {
            Expr::Prod(mut v) => {
                v.push(o);
                Expr::Prod(v)
            }
            s => Expr::Prod(vec![s, o]),
        }
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        Expr::Quot(Box::new(self), Box::new(o))
    }
}

/// Value of a parameter during evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Number(BigRational),
    /// `c * q^e`
    QMonomial(BigRational, i64),
    Symbolic,
}

/// Evaluation environment. The result is a fraction in one symbolic
/// variable: `q` when `q` is unset, otherwise the parameter bound to
/// [`Binding::Symbolic`].
#[derive(Clone, Debug, Default)]
pub struct Env {
    q: Option<BigRational>,
    vars: HashMap<Arc<str>, Binding>,
}

impl Env {
    pub fn symbolic_q() -> Self {
        Env::default()
    }

    pub fn numeric_q(q0: BigRational) -> Self {
        Env {
            q: Some(q0),
            vars: HashMap::new(),
        }
    }

    pub fn with(mut self, name: &str, b: Binding) -> Self {
        self.vars.insert(Arc::from(name), b);
        self
    }

    pub fn set(&mut self, name: &str, b: Binding) {
        self.vars.insert(Arc::from(name), b);
    }

    /// Exponents of parameters bound to q-monomials.
    fn q_tags(&self) -> HashMap<Arc<str>, i64> {
        self.vars
            .iter()
            .filter_map(|(k, b)| match b {
                Binding::QMonomial(_, e) => Some((k.clone(), *e)),
                _ => None,
            })
            .collect()
    }

    /// `q^e` as a fraction: a monomial when `q` is symbolic, else a number.
    fn q_power(&self, e: i64) -> (BigRational, i64) {
        match &self.q {
            None => (BigRational::one(), e),
            Some(q0) => (rational_pow(q0, e), 0),
        }
    }
}

fn pole(what: &str) -> Error {
    Error::PoleAtPoint(what.to_string())
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<Frac> {
        Ok(match self {
            Expr::Const(c) => Frac::constant(c.clone()),
            Expr::QPow(e) => {
                let (c, e) = env.q_power(*e);
                Frac::monomial(c, e)
            }
            Expr::Var(name) => match env.vars.get(name) {
                Some(Binding::Number(c)) => Frac::constant(c.clone()),
                Some(Binding::QMonomial(c, e)) => {
                    let (s, e) = env.q_power(*e);
                    Frac::monomial(c * s, e)
                }
                Some(Binding::Symbolic) => Frac::monomial(BigRational::one(), 1),
                None => {
                    return Err(Error::ParameterDomain(format!(
                        "parameter {name} is unbound"
                    )))
                }
            },
            Expr::Sum(terms) => {
                let mut acc = Frac::zero();
                for t in terms {
                    acc = acc.add(&t.eval(env)?);
                }
                acc
            }
            Expr::Prod(fs) => {
                let mut acc = Frac::one();
                for f in fs {
                    acc = acc.mul(&f.eval(env)?);
                }
                acc
            }
            Expr::Neg(e) => e.eval(env)?.neg(),
            Expr::Quot(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(pole("denominator factor vanishes"));
                }
                a.eval(env)?.div(&d)?
            }
            Expr::Pow(b, e) => {
                let v = b.eval(env)?;
                if *e < 0 && v.is_zero() {
                    return Err(pole("negative power of zero"));
                }
                v.pow(*e)?
            }
            Expr::Poch { base, step, count } => {
                let b = base.eval(env)?;
                let mut out = Frac::one();
                for j in 0..*count {
                    out = mul_one_minus(&out, &b, env.q_power(step * j as i64));
                }
                out
            }
            Expr::Series(s) => eval_series(s, env)?,
            Expr::Fixed(r) => match &env.q {
                None => Frac::from(&**r),
                Some(q0) => Frac::constant(r.eval(q0)?),
            },
        })
    }
}

/// `f * (1 - x * (c T^e))` without expanding `x` when it is a monomial.
fn mul_one_minus(f: &Frac, x: &Frac, (c, e): (BigRational, i64)) -> Frac {
    let (n, d) = one_minus_parts(x, (c, e));
    Frac {
        num: mul_factor(&f.num, &n),
        den: mul_factor(&f.den, &d),
    }
}

/// A factor that is either a binomial `1 - c T^e` or a general polynomial.
enum Factor {
    Binomial(BigRational, i64),
    Poly(LaurentPoly),
}

fn mul_factor(p: &LaurentPoly, f: &Factor) -> LaurentPoly {
    match f {
        Factor::Binomial(c, e) => p.mul_one_minus(c, *e),
        Factor::Poly(g) => {
            if g.is_one() {
                p.clone()
            } else {
                p * g
            }
        }
    }
}

fn factor_is_zero(f: &Factor) -> bool {
    match f {
        Factor::Binomial(c, e) => *e == 0 && c.is_one(),
        Factor::Poly(g) => g.is_zero(),
    }
}

/// Numerator and denominator of `1 - x * (c T^e)`.
fn one_minus_parts(x: &Frac, (c, e): (BigRational, i64)) -> (Factor, Factor) {
    if let Some((xc, xe)) = x.as_monomial() {
        return (
            Factor::Binomial(xc * c, xe + e),
            Factor::Poly(LaurentPoly::one()),
        );
    }
    let shifted = x.num.scale(&c).shifted(e);
    (Factor::Poly(&x.den - &shifted), Factor::Poly(x.den.clone()))
}

fn eval_series(s: &Series, env: &Env) -> Result<Frac> {
    let z = s.argument.eval(env)?;
    let upper = s
        .upper
        .iter()
        .map(|e| e.eval(env))
        .collect::<Result<Vec<_>>>()?;
    let lower = s
        .lower
        .iter()
        .map(|e| e.eval(env))
        .collect::<Result<Vec<_>>>()?;
    // Term ratio r_i = rn_i / rd_i as lists of factors.
    let mut rn: Vec<Vec<Factor>> = Vec::new();
    let mut rd: Vec<Vec<Factor>> = Vec::new();
    for i in 1..=s.truncation {
        let prev = env.q_power(s.step * (i as i64 - 1));
        let mut num = vec![Factor::Poly(z.num.clone())];
        let mut den = vec![Factor::Poly(z.den.clone())];
        for a in &upper {
            let (n, d) = one_minus_parts(a, prev.clone());
            num.push(n);
            den.push(d);
        }
        if num.iter().any(factor_is_zero) {
            break;
        }
        den.push(one_minus_parts(&Frac::one(), env.q_power(s.step * i as i64)).0);
        for b in &lower {
            let (n, d) = one_minus_parts(b, prev.clone());
            den.push(n);
            num.push(d);
        }
        if den.iter().any(factor_is_zero) {
            return Err(Error::IdenticallyZeroDenominator(i));
        }
        rn.push(num);
        rd.push(den);
    }
    // R_{k-1} = 1 + r_k R_k with R_k = x / p.
    let mut x = LaurentPoly::one();
    let mut p = LaurentPoly::one();
    for (num, den) in rn.iter().zip(&rd).rev() {
        for f in den {
            p = mul_factor(&p, f);
        }
        for f in num {
            x = mul_factor(&x, f);
        }
        x = &x + &p;
    }
    Frac::new(x, p)
}

/// Closed interval of exponents of a Laurent polynomial in one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub const ZERO: Span = Span { lo: 0, hi: 0 };

    fn at(e: i64) -> Span {
        Span { lo: e, hi: e }
    }

    fn plus(self, o: Span) -> Span {
        Span {
            lo: self.lo + o.lo,
            hi: self.hi + o.hi,
        }
    }

    fn hull(self, o: Span) -> Span {
        Span {
            lo: self.lo.min(o.lo),
            hi: self.hi.max(o.hi),
        }
    }

    fn times(self, k: i64) -> Span {
        Span {
            lo: self.lo * k,
            hi: self.hi * k,
        }
    }

    pub fn width(self) -> u64 {
        (self.hi - self.lo) as u64
    }
}

/// Exponent ranges of a cleared numerator and denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub num: Span,
    pub den: Span,
}

impl Bound {
    pub const ONE: Bound = Bound {
        num: Span::ZERO,
        den: Span::ZERO,
    };

    fn mul(self, o: Bound) -> Bound {
        Bound {
            num: self.num.plus(o.num),
            den: self.den.plus(o.den),
        }
    }

    fn inv(self) -> Bound {
        Bound {
            num: self.den,
            den: self.num,
        }
    }

    fn times(self, k: i64) -> Bound {
        Bound {
            num: self.num.times(k),
            den: self.den.times(k),
        }
    }

    /// Sum over a common denominator: `Σ N_j Π_{l≠j} D_l / Π D_l`.
    fn sum(parts: &[Bound]) -> Bound {
        let den = parts.iter().fold(Span::ZERO, |s, b| s.plus(b.den));
        let num = parts
            .iter()
            .map(|b| Span {
                lo: den.lo - b.den.lo + b.num.lo,
                hi: den.hi - b.den.hi + b.num.hi,
            })
            .reduce(Span::hull)
            .unwrap_or(Span::ZERO);
        Bound { num, den }
    }

    /// `1 - x * (q-power)` for `x` with this bound, the q-power at `shift`.
    fn one_minus(self, shift: i64) -> Bound {
        Bound {
            num: self.den.hull(Span {
                lo: self.num.lo + shift,
                hi: self.num.hi + shift,
            }),
            den: self.den,
        }
    }

    /// Degree of the cleared identity `self = other`.
    pub fn identity_degree(self, other: Bound) -> u64 {
        Bound::sum(&[self, other]).num.width()
    }
}

/// Which parameter a bound is taken in, with the q-exponents of parameters
/// that are substituted by q-monomials (they matter only for `q`).
pub struct BoundVar<'a> {
    pub name: &'a str,
    pub q_tags: HashMap<Arc<str>, i64>,
}

impl<'a> BoundVar<'a> {
    pub fn new(name: &'a str) -> Self {
        BoundVar {
            name,
            q_tags: HashMap::new(),
        }
    }

    pub fn in_env(name: &'a str, env: &Env) -> Self {
        BoundVar {
            name,
            q_tags: env.q_tags(),
        }
    }

    fn is_q(&self) -> bool {
        self.name == "q"
    }

    fn q_shift(&self, e: i64) -> i64 {
        if self.is_q() {
            e
        } else {
            0
        }
    }
}

/// A monomial `coef * q^qexp * Π v^α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono {
    pub coef: BigRational,
    pub qexp: i64,
    pub vars: BTreeMap<Arc<str>, i64>,
}

impl Mono {
    fn mul(mut self, o: &Mono) -> Mono {
        self.coef *= &o.coef;
        self.qexp += o.qexp;
        for (v, a) in &o.vars {
            let e = self.vars.entry(v.clone()).or_insert(0);
            *e += a;
            if *e == 0 {
                self.vars.remove(v);
            }
        }
        self
    }

    fn pow(&self, e: i64) -> Mono {
        Mono {
            coef: rational_pow(&self.coef, e),
            qexp: self.qexp * e,
            vars: self.vars.iter().map(|(v, a)| (v.clone(), a * e)).collect(),
        }
    }

    /// Same parameter dependence and coefficient, possibly shifted in `q`.
    pub fn same_family(&self, o: &Mono) -> bool {
        self.coef == o.coef && self.vars == o.vars
    }
}

impl Expr {
    /// The expression as a single monomial, when it syntactically is one.
    pub fn monomial(&self) -> Option<Mono> {
        match self {
            Expr::Const(c) if !c.is_zero() => Some(Mono {
                coef: c.clone(),
                qexp: 0,
                vars: BTreeMap::new(),
            }),
            Expr::QPow(e) => Some(Mono {
                coef: BigRational::one(),
                qexp: *e,
                vars: BTreeMap::new(),
            }),
            Expr::Var(v) => Some(Mono {
                coef: BigRational::one(),
                qexp: 0,
                vars: BTreeMap::from([(v.clone(), 1)]),
            }),
            Expr::Prod(fs) => fs
                .iter()
                .try_fold(Expr::Const(BigRational::one()).monomial()?, |m, f| {
                    Some(m.mul(&f.monomial()?))
                }),
            Expr::Quot(a, b) => Some(a.monomial()?.mul(&b.monomial()?.pow(-1))),
            Expr::Pow(b, e) => Some(b.monomial()?.pow(*e as i64)),
            Expr::Neg(e) => {
                let mut m = e.monomial()?;
                m.coef = -m.coef;
                Some(m)
            }
            _ => None,
        }
    }

    /// Exponent ranges, in the parameter `v`, of a cleared numerator and
    /// denominator of this expression. Every factor counts at its literal
    /// degree; the only cancellation used is the telescoping of a series
    /// parameter pair `u = l q^{sj}`, `(u; q^s)_k / (l; q^s)_k =
    /// (l q^{sk}; q^s)_j / (l; q^s)_j`.
    pub fn bound(&self, v: &BoundVar) -> Bound {
        match self {
            Expr::Const(_) => Bound::ONE,
            Expr::QPow(e) => Bound {
                num: Span::at(v.q_shift(*e)),
                den: Span::ZERO,
            },
            Expr::Var(name) => {
                let e = if &**name == v.name {
                    1
                } else {
                    v.q_tags.get(name).map_or(0, |e| v.q_shift(*e))
                };
                Bound {
                    num: Span::at(e),
                    den: Span::ZERO,
                }
            }
            Expr::Sum(ts) => Bound::sum(&ts.iter().map(|t| t.bound(v)).collect::<Vec<_>>()),
            Expr::Prod(fs) => fs.iter().fold(Bound::ONE, |b, f| b.mul(f.bound(v))),
            Expr::Neg(e) => e.bound(v),
            Expr::Quot(a, b) => a.bound(v).mul(b.bound(v).inv()),
            Expr::Pow(b, e) => {
                let bb = b.bound(v);
                if *e >= 0 {
                    bb.times(*e as i64)
                } else {
                    bb.inv().times(-(*e as i64))
                }
            }
            Expr::Poch { base, step, count } => {
                let b = base.bound(v);
                (0..*count as i64).fold(Bound::ONE, |acc, j| {
                    acc.mul(b.one_minus(v.q_shift(step * j)))
                })
            }
            Expr::Series(s) => series_bound(s, v),
            Expr::Fixed(r) => {
                let span = |p: &LaurentPoly| {
                    if v.is_q() && !p.is_zero() {
                        Span {
                            lo: p.min_exp(),
                            hi: p.max_exp(),
                        }
                    } else {
                        Span::ZERO
                    }
                };
                Bound {
                    num: span(r.num()),
                    den: span(r.den()),
                }
            }
        }
    }
}

/// Telescoping pairs `(upper index, lower index, j)` with `u = l q^{s j}`.
fn telescoping_pairs(s: &Series) -> Vec<(usize, usize, i64)> {
    let mut used_lower = vec![false; s.lower.len()];
    let mut pairs = Vec::new();
    for (ui, u) in s.upper.iter().enumerate() {
        let Some(mu) = u.monomial() else { continue };
        if mu.vars.is_empty() {
            continue;
        }
        let best = s
            .lower
            .iter()
            .enumerate()
            .filter(|(li, _)| !used_lower[*li])
            .filter_map(|(li, l)| {
                let ml = l.monomial()?;
                let d = mu.qexp - ml.qexp;
                (mu.same_family(&ml) && d >= 0 && d % s.step == 0).then_some((li, d / s.step))
            })
            .min_by_key(|&(_, j)| j);
        if let Some((li, j)) = best {
            if (j as usize) < s.truncation {
                used_lower[li] = true;
                pairs.push((ui, li, j));
            }
        }
    }
    pairs
}

fn series_bound(s: &Series, v: &BoundVar) -> Bound {
    let pairs = if v.is_q() {
        Vec::new()
    } else {
        telescoping_pairs(s)
    };
    let paired_u: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let paired_l: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let z = s.argument.bound(v);
    let ub: Vec<Bound> = s.upper.iter().map(|e| e.bound(v)).collect();
    let lb: Vec<Bound> = s.lower.iter().map(|e| e.bound(v)).collect();
    let kk = s.truncation;
    let mut rn = Vec::with_capacity(kk);
    let mut rd = Vec::with_capacity(kk);
    for i in 1..=kk as i64 {
        let prev = v.q_shift(s.step * (i - 1));
        let mut u = z;
        for (idx, b) in ub.iter().enumerate() {
            if !paired_u.contains(&idx) {
                u = u.mul(b.one_minus(prev));
            }
        }
        let mut l = Bound::ONE.one_minus(v.q_shift(s.step * i));
        for (idx, b) in lb.iter().enumerate() {
            if !paired_l.contains(&idx) {
                l = l.mul(b.one_minus(prev));
            }
        }
        let r = u.mul(l.inv());
        rn.push(r.num);
        rd.push(r.den);
    }
    // Horner form: X = Σ_k Π_{i≤k} rn_i Π_{i>k} rd_i, P = Π rd_i.
    let p = rd.iter().fold(Span::ZERO, |a, b| a.plus(*b));
    let mut x = p;
    let mut acc = p;
    for i in 0..kk {
        acc = Span {
            lo: acc.lo - rd[i].lo + rn[i].lo,
            hi: acc.hi - rd[i].hi + rn[i].hi,
        };
        x = x.hull(acc);
    }
    let mut out = Bound { num: x, den: p };
    for &(_, li, j) in &pairs {
        let l = lb[li];
        let f = l.den.hull(l.num).times(j);
        out = out.mul(Bound { num: f, den: f });
    }
    out
}

/// `(base; q^step)_count^power` inside a hypergeometric term.
#[derive(Clone, Debug)]
pub struct PochPower {
    pub base: Expr,
    pub step: i64,
    pub count: usize,
    pub power: i32,
}

impl PochPower {
    pub fn new(base: Expr, step: i64, count: usize, power: i32) -> Self {
        PochPower {
            base,
            step,
            count,
            power,
        }
    }
}

/// `coeff * Π (base; q^s)_count^power`.
#[derive(Clone, Debug)]
pub struct HyperTerm {
    pub coeff: Expr,
    pub pochs: Vec<PochPower>,
}

impl HyperTerm {
    pub fn to_expr(&self) -> Expr {
        let mut f = vec![self.coeff.clone()];
        for p in &self.pochs {
            f.push(poch(p.base.clone(), p.step, p.count).pow(p.power));
        }
        Expr::Prod(f)
    }

    /// Bound of `self / base` after cancelling matching Pochhammer symbols:
    /// `(l q^{sj}; q^s)_k / (l; q^s)_k` keeps `min(|j|, k)` factors above
    /// and below, anything unmatched counts in full.
    pub fn reduced_bound(&self, base: &[PochPower], v: &BoundVar) -> Bound {
        let mut out = self.coeff.bound(v);
        // Unit entries: (mono, expr, step, count, sign).
        let mut entries: Vec<(Option<Mono>, &Expr, i64, usize, i32)> = Vec::new();
        for (list, sign) in [(&self.pochs[..], 1), (base, -1)] {
            for p in list {
                for _ in 0..p.power.unsigned_abs() {
                    entries.push((
                        p.base.monomial(),
                        &p.base,
                        p.step,
                        p.count,
                        sign * p.power.signum(),
                    ));
                }
            }
        }
        let mut used = vec![false; entries.len()];
        for i in 0..entries.len() {
            if used[i] || entries[i].4 < 0 {
                continue;
            }
            let (ref mi, _, si, ci, _) = entries[i];
            let best = (0..entries.len())
                .filter(|&t| {
                    !used[t] && entries[t].4 < 0 && entries[t].2 == si && entries[t].3 == ci
                })
                .filter_map(|t| {
                    let (a, b) = (mi.as_ref()?, entries[t].0.as_ref()?);
                    let d = a.qexp - b.qexp;
                    (a.same_family(b) && d % si == 0).then_some((t, (d / si).unsigned_abs()))
                })
                .min_by_key(|&(_, j)| j);
            if let Some((t, j)) = best {
                used[i] = true;
                used[t] = true;
                let m = (j as usize).min(ci) as i64;
                let b = entries[t].1.bound(v);
                let f = b.den.hull(b.num).times(m);
                out = out.mul(Bound { num: f, den: f });
            }
        }
        for (idx, (_, e, step, count, sign)) in entries.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let pb = poch((*e).clone(), *step, *count).bound(v);
            out = out.mul(if *sign > 0 { pb } else { pb.inv() });
        }
        out
    }
}

/// Degree in `v` of the cleared identity `Σ lhs = Σ rhs` after dividing
/// every term by the Pochhammer product `base`.
pub fn reduced_identity_degree(
    lhs: &[HyperTerm],
    rhs: &[HyperTerm],
    base: &[PochPower],
    v: &BoundVar,
) -> u64 {
    let parts: Vec<Bound> = lhs
        .iter()
        .chain(rhs)
        .map(|t| t.reduced_bound(base, v))
        .collect();
    Bound::sum(&parts).num.width()
}

/// Degree in `v` of the cleared identity `lhs = rhs`.
pub fn identity_degree(lhs: &Expr, rhs: &Expr, v: &BoundVar) -> u64 {
    lhs.bound(v).identity_degree(rhs.bound(v))
}

/// Evaluates a product of Pochhammer symbols and reports whether it is
/// finite and nonzero (a valid divisor for a reduced identity).
pub fn pochs_nonvanishing(pochs: &[PochPower], env: &Env) -> Result<bool> {
    for p in pochs {
        let b = p.base.eval(env)?;
        for j in 0..p.count {
            let (n, _) = one_minus_parts(&b, env.q_power(p.step * j as i64));
            if factor_is_zero(&n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
