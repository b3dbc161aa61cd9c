//! Declarative text format for ring presentations (versioned, schema
//! `ring ... v1`).
//!
//! ```text
//! ring thh v1
//! prime 5
//! gen u trunc:p-1 t=2 w=1
//! gen a[i] for i=0..p-1 ext t=2*p*i+3 w=1
//! gen b[i] for i=1..p-1 poly t=2*p*i+2 w=1
//! alias b[0] = u
//! rule a[i]*b[j] -> u*a[i+j] if i+j<=p-1
//! ```
//!
//! Tokens are whitespace-separated; expressions must not contain
//! spaces. Index variables in a rule range over the declared indices of
//! their template, filtered by the `if` condition. `alias x[K] = y`
//! substitutes `y` wherever expansion produces the instance `x[K]`.

use std::collections::BTreeMap;

use crate::element::Element;
use crate::gens::{GenKind, GeneratorSpec, Gens, TriDeg};
use crate::monomial::Monomial;
use crate::ring::{RewriteRule, RingSpec};
use crate::CoreError;

fn perr(line_no: usize, msg: impl Into<String>) -> CoreError {
    CoreError::Parse(format!("line {}: {}", line_no, msg.into()))
}

// ---------------------------------------------------------------- exprs

#[derive(Clone, Debug)]
enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &BTreeMap<String, i64>) -> Result<i64, String> {
        Ok(match self {
            Expr::Int(v) => *v,
            Expr::Var(name) => *env
                .get(name)
                .ok_or_else(|| format!("unbound variable `{name}`"))?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Pow(a, b) => {
                let base = a.eval(env)?;
                let exp = b.eval(env)?;
                if !(0..=62).contains(&exp) {
                    return Err(format!("exponent {exp} out of range"));
                }
                base.pow(exp as u32)
            }
        })
    }

    fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(e) => e.vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Pow(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str) -> Self {
        ExprParser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_expr(&mut self) -> Result<Expr, String> {
        let mut lhs = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.parse_term()?));
                }
                '-' => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.parse_term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Expr, String> {
        let mut lhs = self.parse_pow()?;
        while self.peek() == Some('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.parse_pow()?));
        }
        Ok(lhs)
    }

    fn parse_pow(&mut self) -> Result<Expr, String> {
        let base = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let exp = self.parse_atom()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.parse_atom()?)))
            }
            Some('(') => {
                self.bump();
                let e = self.parse_expr()?;
                if self.bump() != Some(')') {
                    return Err(format!("expected `)` in `{}`", self.src));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut v = 0i64;
                while let Some(c) = self.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    v = v * 10 + (c as i64 - '0' as i64);
                    self.bump();
                }
                Ok(Expr::Int(v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                Ok(Expr::Var(name))
            }
            other => Err(format!("unexpected {:?} in `{}`", other, self.src)),
        }
    }

    fn finish(self) -> Result<(), String> {
        if self.pos != self.chars.len() {
            return Err(format!("trailing input in `{}`", self.src));
        }
        Ok(())
    }
}

fn parse_expr_str(s: &str) -> Result<Expr, String> {
    let mut p = ExprParser::new(s);
    let e = p.parse_expr()?;
    p.finish()?;
    Ok(e)
}

#[derive(Clone, Debug)]
enum Cond {
    Rel(Expr, String, Expr),
    And(Box<Cond>, Box<Cond>),
}

impl Cond {
    fn eval(&self, env: &BTreeMap<String, i64>) -> Result<bool, String> {
        Ok(match self {
            Cond::Rel(a, op, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                match op.as_str() {
                    "<=" => x <= y,
                    ">=" => x >= y,
                    "<" => x < y,
                    ">" => x > y,
                    "==" | "=" => x == y,
                    "!=" => x != y,
                    _ => return Err(format!("unknown relation `{op}`")),
                }
            }
            Cond::And(a, b) => a.eval(env)? && b.eval(env)?,
        })
    }

    fn vars(&self, out: &mut Vec<String>) {
        match self {
            Cond::Rel(a, _, b) => {
                a.vars(out);
                b.vars(out);
            }
            Cond::And(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

fn parse_cond(s: &str) -> Result<Cond, String> {
    if let Some((l, r)) = s.split_once("&&") {
        return Ok(Cond::And(
            Box::new(parse_cond(l)?),
            Box::new(parse_cond(r)?),
        ));
    }
    for op in ["<=", ">=", "==", "!=", "<", ">", "="] {
        if let Some((l, r)) = s.split_once(op) {
            return Ok(Cond::Rel(
                parse_expr_str(l)?,
                op.to_string(),
                parse_expr_str(r)?,
            ));
        }
    }
    Err(format!("no relation in condition `{s}`"))
}

// ---------------------------------------------------------- monomials

/// `name` or `name[EXPR]`, optionally `^EXPR`.
#[derive(Clone, Debug)]
struct FactorPat {
    base: String,
    index: Option<Expr>,
    exp: Expr,
}

fn parse_factor(s: &str) -> Result<FactorPat, String> {
    let (head, exp) = match split_top(s, '^') {
        Some((h, e)) => (h, parse_expr_str(e)?),
        None => (s, Expr::Int(1)),
    };
    if let Some(open) = head.find('[') {
        if !head.ends_with(']') {
            return Err(format!("unterminated index in `{head}`"));
        }
        let base = &head[..open];
        let idx = &head[open + 1..head.len() - 1];
        Ok(FactorPat {
            base: base.to_string(),
            index: Some(parse_expr_str(idx)?),
            exp,
        })
    } else {
        Ok(FactorPat {
            base: head.to_string(),
            index: None,
            exp,
        })
    }
}

/// Split at the first top-level (outside brackets/parens) occurrence.
fn split_top(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn split_all_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = s;
    while let Some((head, tail)) = split_top(rest, sep) {
        out.push(head);
        rest = tail;
    }
    out.push(rest);
    out
}

#[derive(Clone, Debug)]
struct TermPat {
    sign: i64,
    coeff: Expr,
    factors: Vec<FactorPat>,
}

#[derive(Clone, Debug)]
struct ElemPat {
    terms: Vec<TermPat>,
}

fn parse_elem(s: &str) -> Result<ElemPat, String> {
    if s == "0" {
        return Ok(ElemPat { terms: vec![] });
    }
    let mut terms = Vec::new();
    // split into signed terms at top-level +/-
    let mut chunks: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(c);
            }
            '+' if depth == 0 && !cur.is_empty() => {
                chunks.push((sign, std::mem::take(&mut cur)));
                sign = 1;
            }
            '-' if depth == 0 && (cur.is_empty() && chunks.is_empty() && i == 0) => {
                sign = -1;
            }
            '-' if depth == 0 && !cur.is_empty() => {
                chunks.push((sign, std::mem::take(&mut cur)));
                sign = -1;
            }
            _ => cur.push(c),
        }
    }
    if !cur.is_empty() {
        chunks.push((sign, cur));
    }
    for (sgn, chunk) in chunks {
        let mut coeff = Expr::Int(1);
        let mut factors = Vec::new();
        for piece in split_all_top(&chunk, '*') {
            if piece.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                coeff = Expr::Mul(Box::new(coeff), Box::new(parse_expr_str(piece)?));
            } else if piece.starts_with('(') {
                coeff = Expr::Mul(Box::new(coeff), Box::new(parse_expr_str(piece)?));
            } else {
                factors.push(parse_factor(piece)?);
            }
        }
        terms.push(TermPat {
            sign: sgn,
            coeff,
            factors,
        });
    }
    Ok(ElemPat { terms })
}

// ------------------------------------------------------------- loader

#[derive(Clone, Debug)]
struct GenDecl {
    base: String,
    indexed: bool,
    range: Option<(Expr, Expr)>,
    var: Option<String>,
    kind_name: String,
    kind_arg: Option<Expr>,
    t: Expr,
    s: Expr,
    w: Expr,
}

/// Parse the `ring ... v1` text format into a [`RingSpec`].
pub fn parse_ring_config(text: &str) -> Result<RingSpec, CoreError> {
    let mut prime: Option<u64> = None;
    let mut decls: Vec<GenDecl> = Vec::new();
    let mut aliases: Vec<(String, Expr, String)> = Vec::new(); // (base, index, target)
    let mut rule_lines: Vec<(usize, String, Option<String>, Option<(String, Expr, Expr)>)> =
        Vec::new(); // (line, "lhs->rhs", cond, explicit for)
    let mut saw_header = false;

    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "ring" => {
                if tokens.len() != 3 || tokens[2] != "v1" {
                    return Err(perr(line_no, "expected `ring <name> v1`"));
                }
                saw_header = true;
            }
            "prime" => {
                let p = tokens
                    .get(1)
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| perr(line_no, "expected `prime <n>`"))?;
                prime = Some(p);
            }
            "gen" => {
                let mut it = tokens[1..].iter();
                let name = *it.next().ok_or_else(|| perr(line_no, "missing name"))?;
                let (base, indexed) = match name.find('[') {
                    Some(i) => (&name[..i], true),
                    None => (name, false),
                };
                let var = if indexed {
                    let inner = &name[name.find('[').unwrap() + 1..name.len() - 1];
                    Some(inner.to_string())
                } else {
                    None
                };
                let mut range = None;
                let mut kind_name = String::new();
                let mut kind_arg = None;
                let mut t = None;
                let mut s = Expr::Int(0);
                let mut w = Expr::Int(0);
                let rest: Vec<&str> = it.copied().collect();
                let mut i = 0;
                while i < rest.len() {
                    let tok = rest[i];
                    if tok == "for" {
                        let spec = rest
                            .get(i + 1)
                            .ok_or_else(|| perr(line_no, "missing range after `for`"))?;
                        let (v, r) = spec
                            .split_once('=')
                            .ok_or_else(|| perr(line_no, "expected var=lo..hi"))?;
                        let (lo, hi) = r
                            .split_once("..")
                            .ok_or_else(|| perr(line_no, "expected lo..hi"))?;
                        if Some(v.to_string()) != var {
                            return Err(perr(line_no, "range variable must match [var]"));
                        }
                        range = Some((
                            parse_expr_str(lo).map_err(|e| perr(line_no, e))?,
                            parse_expr_str(hi).map_err(|e| perr(line_no, e))?,
                        ));
                        i += 2;
                    } else if let Some(v) = tok.strip_prefix("t=") {
                        t = Some(parse_expr_str(v).map_err(|e| perr(line_no, e))?);
                        i += 1;
                    } else if let Some(v) = tok.strip_prefix("s=") {
                        s = parse_expr_str(v).map_err(|e| perr(line_no, e))?;
                        i += 1;
                    } else if let Some(v) = tok.strip_prefix("w=") {
                        w = parse_expr_str(v).map_err(|e| perr(line_no, e))?;
                        i += 1;
                    } else {
                        let (k, arg) = match tok.split_once(':') {
                            Some((k, a)) => (
                                k.to_string(),
                                Some(parse_expr_str(a).map_err(|e| perr(line_no, e))?),
                            ),
                            None => (tok.to_string(), None),
                        };
                        if !["ext", "poly", "trunc", "laurent"].contains(&k.as_str()) {
                            return Err(perr(line_no, format!("unknown token `{tok}`")));
                        }
                        kind_name = k;
                        kind_arg = arg;
                        i += 1;
                    }
                }
                if indexed && range.is_none() {
                    return Err(perr(line_no, "indexed generator needs `for`"));
                }
                decls.push(GenDecl {
                    base: base.to_string(),
                    indexed,
                    range,
                    var,
                    kind_name,
                    kind_arg,
                    t: t.ok_or_else(|| perr(line_no, "missing t="))?,
                    s,
                    w,
                });
            }
            "alias" => {
                // alias b[0] = u
                if tokens.len() != 4 || tokens[2] != "=" {
                    return Err(perr(line_no, "expected `alias x[k] = y`"));
                }
                let pat = tokens[1];
                let open = pat
                    .find('[')
                    .ok_or_else(|| perr(line_no, "alias source must be indexed"))?;
                let base = &pat[..open];
                let idx = &pat[open + 1..pat.len() - 1];
                aliases.push((
                    base.to_string(),
                    parse_expr_str(idx).map_err(|e| perr(line_no, e))?,
                    tokens[3].to_string(),
                ));
            }
            "rule" => {
                // rule LHS -> RHS [for i=..] [if COND]
                let body = line.strip_prefix("rule").unwrap().trim();
                let (main, cond) = match body.find(" if ") {
                    Some(i) => (&body[..i], Some(body[i + 4..].trim().to_string())),
                    None => (body, None),
                };
                let main = main.trim();
                let (lhs_rhs, forspec) = match main.find(" for ") {
                    Some(i) => {
                        let f = main[i + 5..].trim();
                        let (v, r) = f
                            .split_once('=')
                            .ok_or_else(|| perr(line_no, "expected var=lo..hi"))?;
                        let (lo, hi) = r
                            .split_once("..")
                            .ok_or_else(|| perr(line_no, "expected lo..hi"))?;
                        (
                            main[..i].trim(),
                            Some((
                                v.to_string(),
                                parse_expr_str(lo).map_err(|e| perr(line_no, e))?,
                                parse_expr_str(hi).map_err(|e| perr(line_no, e))?,
                            )),
                        )
                    }
                    None => (main, None),
                };
                rule_lines.push((line_no, lhs_rhs.to_string(), cond, forspec));
            }
            other => return Err(perr(line_no, format!("unknown directive `{other}`"))),
        }
    }

    if !saw_header {
        return Err(CoreError::Parse("missing `ring <name> v1` header".into()));
    }
    let p = prime.ok_or_else(|| CoreError::Parse("missing `prime`".into()))?;
    if !fp_linalg::is_prime(p) || p < 3 {
        return Err(CoreError::BadPrime(p));
    }
    let base_env: BTreeMap<String, i64> = [("p".to_string(), p as i64)].into();

    // instantiate generators
    let mut gen_specs = Vec::new();
    let mut index_ranges: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    for d in &decls {
        let kind = |env: &BTreeMap<String, i64>| -> Result<GenKind, CoreError> {
            Ok(match d.kind_name.as_str() {
                "ext" => GenKind::Exterior,
                "poly" => GenKind::Polynomial,
                "trunc" => {
                    let h = d
                        .kind_arg
                        .as_ref()
                        .ok_or_else(|| CoreError::Parse("trunc needs a height".into()))?
                        .eval(env)
                        .map_err(CoreError::Parse)?;
                    GenKind::Truncated(h as u32)
                }
                "laurent" => {
                    let k = match &d.kind_arg {
                        Some(e) => e.eval(env).map_err(CoreError::Parse)?,
                        None => 1,
                    };
                    GenKind::Laurent(k as u32)
                }
                _ => unreachable!(),
            })
        };
        if d.indexed {
            let (lo, hi) = d.range.as_ref().unwrap();
            let lo = lo.eval(&base_env).map_err(CoreError::Parse)?;
            let hi = hi.eval(&base_env).map_err(CoreError::Parse)?;
            let var = d.var.clone().unwrap();
            let mut indices = Vec::new();
            for idx in lo..=hi {
                let mut env = base_env.clone();
                env.insert(var.clone(), idx);
                let name = format!("{}{}", d.base, idx);
                gen_specs.push(GeneratorSpec::new(
                    &name,
                    kind(&env)?,
                    TriDeg::new(
                        d.s.eval(&env).map_err(CoreError::Parse)?,
                        d.t.eval(&env).map_err(CoreError::Parse)?,
                    ),
                    d.w.eval(&env).map_err(CoreError::Parse)?.rem_euclid(p as i64 - 1) as u32,
                ));
                indices.push(idx);
            }
            index_ranges.insert(d.base.clone(), indices);
        } else {
            gen_specs.push(GeneratorSpec::new(
                &d.base,
                kind(&base_env)?,
                TriDeg::new(
                    d.s.eval(&base_env).map_err(CoreError::Parse)?,
                    d.t.eval(&base_env).map_err(CoreError::Parse)?,
                ),
                d.w.eval(&base_env).map_err(CoreError::Parse)?.rem_euclid(p as i64 - 1)
                    as u32,
            ));
        }
    }
    let gens = Gens::new(gen_specs)?;

    // resolve an instantiated factor to a generator name, applying aliases
    let resolve = |base: &str, idx: Option<i64>| -> Option<String> {
        match idx {
            None => Some(base.to_string()),
            Some(i) => {
                for (abase, aidx, target) in &aliases {
                    if abase == base && aidx.eval(&base_env) == Ok(i) {
                        return Some(target.clone());
                    }
                }
                Some(format!("{base}{i}"))
            }
        }
    };

    // expand rules
    let mut rules: Vec<RewriteRule> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line_no, lhs_rhs, cond, forspec) in &rule_lines {
        let (lhs_s, rhs_s) = lhs_rhs
            .split_once("->")
            .ok_or_else(|| perr(*line_no, "missing `->`"))?;
        let lhs_pat = parse_elem(lhs_s.trim()).map_err(|e| perr(*line_no, e))?;
        if lhs_pat.terms.len() != 1 {
            return Err(perr(*line_no, "rule lhs must be one monomial"));
        }
        let rhs_pat = parse_elem(rhs_s.trim()).map_err(|e| perr(*line_no, e))?;
        let cond_pat = match cond {
            Some(c) => Some(parse_cond(c).map_err(|e| perr(*line_no, e))?),
            None => None,
        };

        // collect loop variables: explicit `for`, else every non-`p`
        // variable occurring in lhs indices; each ranges over its
        // template's declared indices
        let mut vars: Vec<String> = Vec::new();
        let mut var_ranges: BTreeMap<String, Vec<i64>> = BTreeMap::new();
        if let Some((v, lo, hi)) = forspec {
            let lo = lo.eval(&base_env).map_err(|e| perr(*line_no, e))?;
            let hi = hi.eval(&base_env).map_err(|e| perr(*line_no, e))?;
            vars.push(v.clone());
            var_ranges.insert(v.clone(), (lo..=hi).collect());
        }
        for f in lhs_pat.terms[0]
            .factors
            .iter()
            .chain(rhs_pat.terms.iter().flat_map(|t| t.factors.iter()))
        {
            if let Some(ix) = &f.index {
                let mut vs = Vec::new();
                ix.vars(&mut vs);
                for v in vs {
                    if v != "p" && !vars.contains(&v) {
                        let range = index_ranges.get(&f.base).cloned().unwrap_or_default();
                        var_ranges.entry(v.clone()).or_insert(range);
                        vars.push(v);
                    }
                }
            }
        }
        if let Some(c) = &cond_pat {
            let mut vs = Vec::new();
            c.vars(&mut vs);
            for v in vs {
                if v != "p" && !vars.contains(&v) {
                    return Err(perr(*line_no, format!("condition variable `{v}` unbound")));
                }
            }
        }

        let assignments = cartesian(&vars, &var_ranges);
        for assign in assignments {
            let mut env = base_env.clone();
            for (v, x) in &assign {
                env.insert(v.clone(), *x);
            }
            if let Some(c) = &cond_pat {
                if !c.eval(&env).map_err(|e| perr(*line_no, e))? {
                    continue;
                }
            }
            let inst = |pat: &ElemPat| -> Result<Option<Element>, CoreError> {
                let mut out = Element::zero();
                for term in &pat.terms {
                    let mut exps = Vec::new();
                    let mut ok = true;
                    for f in &term.factors {
                        let idx = match &f.index {
                            Some(e) => Some(e.eval(&env).map_err(|e| perr(*line_no, e))?),
                            None => None,
                        };
                        let name = resolve(&f.base, idx).unwrap();
                        let Ok(id) = gens.id(&name) else {
                            ok = false;
                            break;
                        };
                        let exp = f.exp.eval(&env).map_err(|e| perr(*line_no, e))?;
                        exps.push((id, exp));
                    }
                    if !ok {
                        return Ok(None);
                    }
                    let coeff =
                        term.sign * term.coeff.eval(&env).map_err(|e| perr(*line_no, e))?;
                    out.add_term(Monomial::from_exps(exps), coeff, p);
                }
                Ok(Some(out))
            };
            let Some(lhs_elem) = inst(&lhs_pat)? else {
                continue; // lhs references an undeclared instance
            };
            let Some(rhs_elem) = inst(&rhs_pat)? else {
                continue;
            };
            let mut lhs_iter = lhs_elem.iter();
            let Some((lhs_mon, c)) = lhs_iter.next() else {
                continue;
            };
            if c != 1 || lhs_iter.next().is_some() {
                return Err(perr(*line_no, "rule lhs must be a plain monomial"));
            }
            if rhs_elem.coefficient(lhs_mon) != 0 {
                return Err(perr(*line_no, "rule lhs occurs in rhs"));
            }
            let key = format!("{lhs_mon:?}=>{rhs_elem:?}");
            if seen.insert(key) {
                rules.push(RewriteRule {
                    lhs: lhs_mon.clone(),
                    rhs: rhs_elem,
                });
            }
        }
    }

    RingSpec::new(p, gens, rules)
}

fn cartesian(
    vars: &[String],
    ranges: &BTreeMap<String, Vec<i64>>,
) -> Vec<Vec<(String, i64)>> {
    let mut out: Vec<Vec<(String, i64)>> = vec![Vec::new()];
    for v in vars {
        let empty = Vec::new();
        let vals = ranges.get(v).unwrap_or(&empty);
        let mut next = Vec::new();
        for partial in &out {
            for x in vals {
                let mut p = partial.clone();
                p.push((v.clone(), *x));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Serialize a ring in fully expanded (template-free) form. Parsing the
/// output reproduces the presentation.
pub fn ring_to_config(ring: &RingSpec, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("ring {name} v1\n"));
    out.push_str(&format!("prime {}\n", ring.p));
    for (_, g) in ring.gens.iter() {
        let kind = match g.kind {
            GenKind::Exterior => "ext".to_string(),
            GenKind::Polynomial => "poly".to_string(),
            GenKind::Truncated(h) => format!("trunc:{h}"),
            GenKind::Laurent(k) => format!("laurent:{k}"),
        };
        out.push_str(&format!(
            "gen {} {} t={} s={} w={}\n",
            g.name, kind, g.degree.t, g.degree.s, g.weight
        ));
    }
    for rule in &ring.rules {
        out.push_str(&format!(
            "rule {} -> {}\n",
            rule.lhs.display(&ring.gens).replace(' ', ""),
            rule.rhs.display(&ring.gens).replace(" + ", "+").replace(' ', "")
        ));
    }
    out
}
