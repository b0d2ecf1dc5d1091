//! Compact text forms: `Z`, `Q`, `Fp:7`, `Zn:6`, `Poly:Q[x,y]`, `Weil:Q[e^2]`,
//! and element strings such as `3/4` or `2+1*e`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Ring, RingError, RingKind, Value};

fn bad(s: &str, why: &str) -> RingError {
    RingError::BadDescriptor(s.to_string(), why.to_string())
}

/// Splits `head[list]` where the bracket group is the trailing one.
fn split_trailing_group(s: &str) -> Option<(&str, &str)> {
    if !s.ends_with(']') {
        return None;
    }
    let mut depth = 0i32;
    for (i, ch) in s.char_indices().rev() {
        match ch {
            ']' => depth += 1,
            '[' => {
                depth -= 1;
                if depth == 0 {
                    return Some((&s[..i], &s[i + 1..s.len() - 1]));
                }
            }
            _ => {}
        }
    }
    None
}

fn valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Ring, RingError> {
        let s = s.trim();
        match s {
            "Z" => return Ok(Ring::integers()),
            "Q" => return Ok(Ring::rationals()),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| bad(s, "modulus must be an integer"))?;
            return Ring::prime_field(p);
        }
        if let Some(n) = s.strip_prefix("Zn:") {
            let n: u64 = n.parse().map_err(|_| bad(s, "modulus must be an integer"))?;
            return Ring::modular(n);
        }
        if let Some(rest) = s.strip_prefix("Poly:") {
            let (head, list) = split_trailing_group(rest).ok_or_else(|| bad(s, "expected base[vars]"))?;
            let base: Ring = head.parse()?;
            let vars: Vec<&str> = list.split(',').map(str::trim).collect();
            if vars.iter().any(|v| !valid_name(v)) {
                return Err(bad(s, "invalid variable name"));
            }
            return Ok(Ring::polynomial(&base, &vars));
        }
        if let Some(rest) = s.strip_prefix("Weil:") {
            let (head, list) = split_trailing_group(rest).ok_or_else(|| bad(s, "expected base[gens]"))?;
            let base: Ring = head.parse()?;
            let mut gens = vec![];
            for g in list.split(',').map(str::trim) {
                let (name, e) = g.split_once('^').ok_or_else(|| bad(s, "generator needs ^exponent"))?;
                let e: u32 = e.parse().map_err(|_| bad(s, "bad exponent"))?;
                if e < 2 || !valid_name(name) {
                    return Err(bad(s, "generator must be name^k with k >= 2"));
                }
                gens.push((name, e - 1));
            }
            if matches!(base.kind(), RingKind::Weil { .. }) {
                return Err(bad(s, "nest generators in a single bracket list"));
            }
            return base.weil_extend(&gens);
        }
        Err(bad(s, "unknown ring"))
    }
}

impl Ring {
    pub fn parse(s: &str) -> Result<Ring, RingError> {
        s.parse()
    }

    /// Formats an element in the compact text form.
    pub fn format(&self, v: &Value) -> String {
        match v {
            Value::Int(n) => n.to_string(),
            Value::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Value::Res(r) => r.to_string(),
            Value::Poly(m) => {
                if m.is_empty() {
                    return "0".into();
                }
                let base = self.base().unwrap();
                let names = match self.kind() {
                    RingKind::Polynomial { vars, .. } => vars,
                    RingKind::Weil { gens, .. } => gens,
                    _ => unreachable!(),
                };
                let compound = matches!(base.kind(), RingKind::Polynomial { .. } | RingKind::Weil { .. });
                let mut out = String::new();
                for (i, (mono, c)) in m.iter().enumerate() {
                    let mut cs = base.format(c);
                    if compound && (cs[1..].contains('+') || cs[1..].contains('-')) {
                        cs = format!("({cs})");
                    }
                    let ms: Vec<String> = mono
                        .iter()
                        .zip(names)
                        .filter(|(e, _)| **e > 0)
                        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                        .collect();
                    let term = if ms.is_empty() { cs } else { format!("{cs}*{}", ms.join("*")) };
                    if i > 0 && !term.starts_with('-') {
                        out.push('+');
                    }
                    out.push_str(&term);
                }
                out
            }
        }
    }

    /// Parses an element string: integers, fractions, generator names,
    /// `+ - * / ^` and parentheses.
    pub fn parse_element(&self, s: &str) -> Result<Value, RingError> {
        let toks = tokenize(s).map_err(|e| RingError::BadElement(s.into(), self.to_string(), e))?;
        let mut p = Parser { ring: self, toks: &toks, pos: 0 };
        let v = p.expr().map_err(|e| RingError::BadElement(s.into(), self.to_string(), e))?;
        if p.pos != toks.len() {
            return Err(RingError::BadElement(s.into(), self.to_string(), "trailing input".into()));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = vec![];
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            out.push(Tok::Num(n.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: &'a [Tok],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value, String> {
        let r = self.ring;
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = r.neg(&acc);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = r.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = r.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, String> {
        let r = self.ring;
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = r.mul(&acc, &f);
            } else if self.eat('/') {
                let f = self.factor()?;
                let inv = r.inv(&f).ok_or("division by a non-unit")?;
                acc = r.mul(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Value, String> {
        let b = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) if !n.is_negative() => {
                    self.pos += 1;
                    let e: u64 = n.try_into().map_err(|_| "exponent too large")?;
                    Ok(self.ring.pow(&b, e))
                }
                _ => Err("expected exponent".into()),
            }
        } else {
            Ok(b)
        }
    }

    fn primary(&mut self) -> Result<Value, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.ring.from_bigint(&n))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                self.ring.generator_by_name(&n).ok_or_else(|| format!("unknown generator `{n}`"))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)`".into());
                }
                Ok(v)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                let v = self.factor()?;
                Ok(self.ring.neg(&v))
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trips() {
        for s in ["Z", "Q", "Fp:7", "Zn:6", "Poly:Q[x,y]", "Weil:Q[e^2]", "Weil:Fp:5[e^2]", "Weil:Q[e1^2,e2^2]", "Weil:Q[d^4]", "Weil:Fp:3[e^2]", "Weil:Poly:Q[x,y][d^3]"] {
            let r: Ring = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("Fp:4".parse::<Ring>().is_err());
        assert!("Weil:Q[e^1]".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn element_round_trips() {
        let r: Ring = "Weil:Q[d^3]".parse().unwrap();
        let v = r.parse_element("1/2 - d/4 + d^2/8").unwrap();
        assert_eq!(r.format(&v), "1/2-1/4*d+1/8*d^2");
        assert_eq!(r.parse_element(&r.format(&v)).unwrap(), v);
        let t: Ring = "Weil:Fp:5[e^2]".parse().unwrap();
        let v = t.parse_element("2+1*e").unwrap();
        assert_eq!(t.format(&v), "2+1*e");
        let p: Ring = "Weil:Poly:Q[x,y][d^2]".parse().unwrap();
        let v = p.parse_element("(x-y)*d + x*y").unwrap();
        assert_eq!(p.parse_element(&p.format(&v)).unwrap(), v);
        assert!(Ring::integers().parse_element("1/2").is_err());
        assert_eq!(Ring::prime_field(7).unwrap().parse_element("1/2").unwrap(), Value::Res(4));
    }
}
