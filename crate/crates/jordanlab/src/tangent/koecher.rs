//! Formal Jordan expressions evaluated on nilpotent arguments.
//!
//! Grammar: sums of integer multiples of terms, where a term is a variable
//! (`x y z u v w` in `V^+`, `a b c d` in `V^-`), `Q(e)t`, `D(e,e)t`,
//! `B(e,e)t`, `qi(e,e)` or a parenthesized expression. `lhs = rhs` stands for
//! `lhs - rhs`.

use std::collections::BTreeMap;
use std::fmt;

use super::pair::{add, apply, format_vector, random_vector, scale, QuadraticJordanPair, Sign, Vector};
use super::TangentError;
use crate::report::{witness, CheckRecord};
use crate::sweep;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(char),
    Sum(Vec<(i64, Expr)>),
    Q(Box<Expr>, Box<Expr>),
    D(Box<Expr>, Box<Expr>, Box<Expr>),
    B(Box<Expr>, Box<Expr>, Box<Expr>),
    Qi(Box<Expr>, Box<Expr>),
}

fn var_sign(c: char) -> Option<Sign> {
    match c {
        'x' | 'y' | 'z' | 'u' | 'v' | 'w' => Some(Sign::Plus),
        'a' | 'b' | 'c' | 'd' => Some(Sign::Minus),
        _ => None,
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, TangentError> {
        Err(TangentError::Parse(format!("{msg} at offset {}", self.i)))
    }

    fn skip(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), TangentError> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn sum(&mut self) -> Result<Expr, TangentError> {
        let mut terms = vec![];
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.i += 1;
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.i += 1;
        }
        loop {
            let (k, t) = self.term()?;
            terms.push((sign * k, t));
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.i += 1;
        }
        Ok(if terms.len() == 1 && terms[0].0 == 1 { terms.pop().unwrap().1 } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<(i64, Expr), TangentError> {
        let start = self.i;
        let mut k: Option<i64> = None;
        while let Some(c @ b'0'..=b'9') = self.peek() {
            k = Some(k.unwrap_or(0).checked_mul(10).and_then(|v| v.checked_add((c - b'0') as i64)).ok_or_else(|| TangentError::Parse("coefficient overflow".into()))?);
            self.i += 1;
        }
        if k.is_some() && self.peek() == Some(b'*') {
            self.i += 1;
        }
        if k.is_some() && self.i == start {
            return self.err("empty term");
        }
        Ok((k.unwrap_or(1), self.factor()?))
    }

    fn args(&mut self, n: usize) -> Result<Vec<Expr>, TangentError> {
        self.eat(b'(')?;
        let mut out = vec![self.sum()?];
        for _ in 1..n {
            self.eat(b',')?;
            out.push(self.sum()?);
        }
        self.eat(b')')?;
        Ok(out)
    }

    fn factor(&mut self) -> Result<Expr, TangentError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.sum()?;
                self.eat(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_alphanumeric() {
                    self.i += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.i]).unwrap_or("");
                match word {
                    "Q" => {
                        let mut a = self.args(1)?;
                        Ok(Expr::Q(Box::new(a.remove(0)), Box::new(self.factor()?)))
                    }
                    "D" | "B" => {
                        let mut a = self.args(2)?;
                        let (p, q) = (a.remove(0), a.remove(0));
                        let t = self.factor()?;
                        Ok(if word == "D" { Expr::D(Box::new(p), Box::new(q), Box::new(t)) } else { Expr::B(Box::new(p), Box::new(q), Box::new(t)) })
                    }
                    "qi" => {
                        let mut a = self.args(2)?;
                        let (p, q) = (a.remove(0), a.remove(0));
                        Ok(Expr::Qi(Box::new(p), Box::new(q)))
                    }
                    w if w.len() == 1 && var_sign(w.chars().next().unwrap()).is_some() => Ok(Expr::Var(w.chars().next().unwrap())),
                    w => {
                        self.i = start;
                        self.err(&format!("undefined operation or variable '{w}'"))
                    }
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = TangentError;
    fn from_str(s: &str) -> Result<Expr, TangentError> {
        let (lhs, rhs) = match s.split_once('=') {
            Some((l, r)) => (l, Some(r)),
            None => (s, None),
        };
        let parse = |t: &str| -> Result<Expr, TangentError> {
            let mut p = Parser { s: t.as_bytes(), i: 0 };
            let e = p.sum()?;
            if p.peek().is_some() {
                return p.err("trailing input");
            }
            Ok(e)
        };
        let l = parse(lhs)?;
        let e = match rhs {
            Some(r) => Expr::Sum(vec![(1, l), (-1, parse(r)?)]),
            None => l,
        };
        e.sign()?;
        Ok(e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(c) => write!(f, "{c}"),
            Expr::Sum(ts) => {
                write!(f, "(")?;
                for (i, (k, t)) in ts.iter().enumerate() {
                    match (i, *k < 0) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if k.abs() != 1 {
                        write!(f, "{}", k.abs())?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            Expr::Q(a, t) => write!(f, "Q({a}){t}"),
            Expr::D(a, b, t) => write!(f, "D({a},{b}){t}"),
            Expr::B(a, b, t) => write!(f, "B({a},{b}){t}"),
            Expr::Qi(a, b) => write!(f, "qi({a},{b})"),
        }
    }
}

impl Expr {
    /// The module the value lives in.
    pub fn sign(&self) -> Result<Sign, TangentError> {
        let mismatch = |what: &str| Err(TangentError::Parse(format!("type mismatch in {what}: {self}")));
        match self {
            Expr::Var(c) => var_sign(*c).ok_or_else(|| TangentError::Parse(format!("unknown variable {c}"))),
            Expr::Sum(ts) => {
                let s = ts[0].1.sign()?;
                for (_, t) in &ts[1..] {
                    if t.sign()? != s {
                        return mismatch("sum");
                    }
                }
                Ok(s)
            }
            Expr::Q(a, t) => {
                let s = a.sign()?;
                if t.sign()? != s.opp() {
                    return mismatch("Q");
                }
                Ok(s)
            }
            Expr::D(a, b, t) | Expr::B(a, b, t) => {
                let s = a.sign()?;
                if b.sign()? != s.opp() || t.sign()? != s {
                    return mismatch("D/B");
                }
                Ok(s)
            }
            Expr::Qi(a, b) => {
                let s = a.sign()?;
                if b.sign()? != s.opp() {
                    return mismatch("qi");
                }
                Ok(s)
            }
        }
    }

    pub fn variables(&self) -> Vec<char> {
        let mut out = vec![];
        self.collect(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect(&self, out: &mut Vec<char>) {
        match self {
            Expr::Var(c) => out.push(*c),
            Expr::Sum(ts) => ts.iter().for_each(|(_, t)| t.collect(out)),
            Expr::Q(a, t) | Expr::Qi(a, t) => {
                a.collect(out);
                t.collect(out);
            }
            Expr::D(a, b, t) | Expr::B(a, b, t) => {
                a.collect(out);
                b.collect(out);
                t.collect(out);
            }
        }
    }

    pub fn eval(&self, pair: &QuadraticJordanPair, env: &BTreeMap<char, Vector>) -> Result<Vector, TangentError> {
        let r = pair.ring();
        Ok(match self {
            Expr::Var(c) => env.get(c).cloned().ok_or_else(|| TangentError::Parse(format!("unbound variable {c}")))?,
            Expr::Sum(ts) => {
                let n = pair.dim(self.sign()?);
                let mut acc = vec![r.zero(); n];
                for (k, t) in ts {
                    acc = add(r, &acc, &scale(r, &r.from_i64(*k), &t.eval(pair, env)?));
                }
                acc
            }
            Expr::Q(a, t) => pair.q(a.sign()?, &a.eval(pair, env)?, &t.eval(pair, env)?),
            Expr::D(a, b, t) => pair.d(a.sign()?, &a.eval(pair, env)?, &b.eval(pair, env)?, &t.eval(pair, env)?),
            Expr::B(a, b, t) => apply(&pair.bergman(a.sign()?, &a.eval(pair, env)?, &b.eval(pair, env)?), &t.eval(pair, env)?),
            Expr::Qi(a, b) => pair.quasi_inverse(a.sign()?, &a.eval(pair, env)?, &b.eval(pair, env)?)?,
        })
    }
}

/// Which arguments carry the factor `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    #[default]
    Plus,
    Minus,
    Both,
}

/// Evaluates `expr` with random arguments scaled by the generator `δ` of
/// `K[δ]/(δ^(k+1))` and checks each `δ^m`-component separately.
pub fn koecher_jet_check(expr: &Expr, pair: &QuadraticJordanPair, k: u32, scaling: Scaling, samples: u64, seed: u64) -> Result<Vec<CheckRecord>, TangentError> {
    let r = pair.ring().clone();
    let jr = r.jets("d", k)?;
    let jp = pair.over(&jr)?;
    let delta = jr.generator(0);
    let vars = expr.variables();
    let scaled = |s: Sign| matches!((scaling, s), (Scaling::Both, _) | (Scaling::Plus, Sign::Plus) | (Scaling::Minus, Sign::Minus));
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> BTreeMap<char, Vector> {
        vars.iter()
            .map(|&c| {
                let s = var_sign(c).expect("checked");
                (c, random_vector(&r, rng, pair.dim(s)))
            })
            .collect()
    };
    let lift = |env: &BTreeMap<char, Vector>| -> BTreeMap<char, Vector> {
        env.iter()
            .map(|(&c, v)| {
                let s = var_sign(c).expect("checked");
                let w: Vector = v.iter().map(|x| jr.coerce(&r, x).expect("coerce")).collect();
                (c, if scaled(s) { w.iter().map(|x| jr.mul(&delta, x)).collect() } else { w })
            })
            .collect()
    };
    let component = |env: &BTreeMap<char, Vector>, m: u32| -> Option<Vector> {
        let val = expr.eval(&jp, &lift(env)).ok()?;
        Some(val.iter().map(|x| jr.coefficient(x, &[m])).collect())
    };
    let mut out = vec![];
    for m in 0..=k {
        let name = format!("δ^{m} component");
        let zero = vec![r.zero(); pair.dim(expr.sign()?)];
        out.push(sweep::random(
            &name,
            &format!("{expr} = 0"),
            samples,
            seed,
            &mut |rng| Some(draw(rng)),
            &|env| component(env, m).is_some_and(|c| c == zero),
            &|env| {
                let mut w = witness(env.iter().map(|(c, v)| (c.to_string(), format_vector(&r, v))));
                if let Some(c) = component(env, m) {
                    w.insert("component".into(), format_vector(&r, &c).into());
                }
                w
            },
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    #[test]
    fn parse_and_type() {
        let e: Expr = "Q(Q(x)a)b = Q(x)Q(a)Q(x)b".parse().unwrap();
        assert_eq!(e.sign().unwrap(), Sign::Plus);
        assert_eq!(e.variables(), vec!['a', 'b', 'x']);
        assert!("Q(x)y".parse::<Expr>().is_err());
        assert!("P(x)a".parse::<Expr>().is_err());
        assert!("Q(x)a + b".parse::<Expr>().is_err());
        assert!("2*D(x,a)x - 4 Q(x)a + qi(x, a)".parse::<Expr>().is_ok());
    }

    #[test]
    fn jet_checks() {
        let r = Ring::rationals();
        let p = QuadraticJordanPair::scalar(&r);
        let ok = |s: &str, k| koecher_jet_check(&s.parse().unwrap(), &p, k, Scaling::Plus, 20, 1).unwrap();
        assert!(ok("Q(Q(x)a)b = Q(x)Q(a)Q(x)b", 3).iter().all(|c| c.passed()));
        assert!(ok("Q(x)a - Q(x)a", 4).iter().all(|c| c.passed()));
        assert!(ok("qi(x,a) = x + Q(x)qi(a,x)", 3).iter().all(|c| c.passed()));
        let bad = ok("D(x,a)x - Q(x)a", 3);
        let failing: Vec<_> = bad.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect();
        assert_eq!(failing, vec!["δ^2 component"]);
        let m = QuadraticJordanPair::matrix(&Ring::prime_field(2).unwrap(), 1, 2);
        let recs = koecher_jet_check(&"D(x,a)x = 2Q(x)a".parse().unwrap(), &m, 2, Scaling::Both, 10, 2).unwrap();
        assert!(recs.iter().all(|c| c.passed()));
    }
}
