//! Homogeneous polynomials in `x0, x1, x2` over an exact field.
//!
//! Text format: monomials `c*x0^i*x1^j*x2^k` joined by `+` or `-`. Factors
//! with exponent zero and unit coefficients may be omitted when parsing.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::scalar::{Field, Fp, Modulus};

pub type Exps = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("monomial {0:?} does not have degree {1}")]
    NotHomogeneous(Exps, u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Zero coefficients are never stored, so the zero polynomial has an empty map.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogPoly<F: Field> {
    degree: u32,
    ctx: F::Ctx,
    terms: BTreeMap<Exps, F>,
}

/// Exponent triples of total degree `d`, in ascending order.
pub fn monomials(d: u32) -> Vec<Exps> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out.sort();
    out
}

impl<F: Field> HomogPoly<F> {
    pub fn zero(ctx: &F::Ctx, degree: u32) -> Self {
        HomogPoly {
            degree,
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ctx: &F::Ctx, c: F, e: Exps) -> Self {
        let mut p = HomogPoly::zero(ctx, e.iter().sum());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms(
        ctx: &F::Ctx,
        degree: u32,
        terms: impl IntoIterator<Item = (Exps, F)>,
    ) -> Result<Self, PolyError> {
        let mut p = HomogPoly::zero(ctx, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(PolyError::NotHomogeneous(e, degree));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exps, c: F) {
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(*e, c.clone());
        }
        Ok(p)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut p = HomogPoly::zero(&self.ctx, self.degree);
        for (e, v) in &self.terms {
            p.add_term(*e, v.clone() * c.clone());
        }
        p
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&F::from_i64_in(&self.ctx, n))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = HomogPoly::zero(&self.ctx, self.degree + other.degree);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                p.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c.clone() * d.clone());
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = HomogPoly::monomial(&self.ctx, F::one_in(&self.ctx), [0, 0, 0]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in `x_var`; the degree drops by one (stays zero for constants).
    pub fn derivative(&self, var: usize) -> Self {
        let mut p = HomogPoly::zero(&self.ctx, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = *e;
                f[var] -= 1;
                p.add_term(f, c.scale_int(e[var] as i64));
            }
        }
        p
    }

    pub fn gradient(&self) -> [Self; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn eval(&self, x: &[F; 3]) -> F {
        let mut acc = F::zero_in(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..3 {
                for _ in 0..e[v] {
                    t = t * x[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Permute variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let mut p = HomogPoly::zero(&self.ctx, self.degree);
        for (e, c) in &self.terms {
            let mut f = [0; 3];
            for i in 0..3 {
                f[perm[i]] = e[i];
            }
            p.add_term(f, c.clone());
        }
        p
    }

    pub fn parse(ctx: &F::Ctx, text: &str) -> Result<Self, PolyError> {
        Self::parse_with_degree(ctx, text, None)
    }

    /// Parse; `degree` is required to type an all-zero input.
    pub fn parse_with_degree(
        ctx: &F::Ctx,
        text: &str,
        degree: Option<u32>,
    ) -> Result<Self, PolyError> {
        let err = |pos: usize, msg: &str| PolyError::Parse {
            pos,
            msg: msg.to_string(),
        };
        let mut terms: Vec<(Exps, F)> = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip(&mut pos);
            if pos == bytes.len() {
                if first {
                    return Err(err(pos, "empty polynomial"));
                }
                break;
            }
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(err(pos, "expected `+` or `-`"));
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && !matches!(bytes[pos], b'+' | b'-') {
                pos += 1;
            }
            let body: String = text[start..pos].chars().filter(|c| !c.is_whitespace()).collect();
            if body.is_empty() {
                return Err(err(start, "empty term"));
            }
            let mut coef = F::one_in(ctx);
            let mut e = [0u32; 3];
            for (k, factor) in body.split('*').enumerate() {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, x)) => (v, x.parse::<u32>().map_err(|_| err(start, "bad exponent"))?),
                        None => (rest, 1),
                    };
                    let v: usize = match var {
                        "0" => 0,
                        "1" => 1,
                        "2" => 2,
                        _ => return Err(err(start, "variables are x0, x1, x2")),
                    };
                    e[v] += exp;
                } else if k == 0 {
                    coef = F::parse_in(ctx, factor).ok_or_else(|| err(start, "bad coefficient"))?;
                } else {
                    return Err(err(start, "coefficient must come first"));
                }
            }
            if negative {
                coef = -coef;
            }
            terms.push((e, coef));
        }
        let d = match degree {
            Some(d) => d,
            None => terms
                .iter()
                .find(|(_, c)| !c.is_zero())
                .or(terms.first())
                .map_or(0, |(e, _)| e.iter().sum()),
        };
        HomogPoly::from_terms(ctx, d, terms.into_iter().filter(|(_, c)| !c.is_zero()))
    }
}

impl<F: Field> fmt::Display for HomogPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*x0^{}*x1^{}*x2^{}", e[0], e[1], e[2])?;
        }
        Ok(())
    }
}

impl HomogPoly<Fp> {
    /// Uniformly random coefficients on every monomial of degree `d`.
    pub fn random<R: Rng>(m: Modulus, d: u32, rng: &mut R) -> Self {
        let terms = monomials(d)
            .into_iter()
            .map(|e| (e, m.elem(rng.gen_range(0..m.get()) as i64)));
        HomogPoly::from_terms(&m, d, terms).expect("monomials have degree d")
    }

    /// Compiled form for fast repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            p: self.ctx.get() as u64,
            degree: self.degree as usize,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e[0] as usize, e[1] as usize, e[2] as usize, c.value() as u64))
                .collect(),
        }
    }
}

/// Coefficients as machine words for point scans over `F_p`.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    p: u64,
    degree: usize,
    terms: Vec<(usize, usize, usize, u64)>,
}

/// Powers `x^0..=x^d` of each coordinate, shared by all polynomials of degree at most `d`.
pub struct PowerTable {
    pub rows: [Vec<u64>; 3],
}

impl PowerTable {
    pub fn new(x: [u64; 3], d: usize, p: u64) -> Self {
        let row = |v: u64| {
            let mut r = Vec::with_capacity(d + 1);
            let mut acc = 1 % p;
            for _ in 0..=d {
                r.push(acc);
                acc = acc * v % p;
            }
            r
        };
        PowerTable {
            rows: [row(x[0]), row(x[1]), row(x[2])],
        }
    }
}

impl CompiledPoly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, t: &PowerTable) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, &(i, j, k, c)| {
            (acc + c * t.rows[0][i] % p * t.rows[1][j] % p * t.rows[2][k]) % p
        })
    }
}
