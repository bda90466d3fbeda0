//! Lexer, expression evaluator, and section parser for the `.hopf` text
//! format. The format is line-oriented: `#` starts a comment, sections are
//! introduced by a keyword at the start of a line, and `dual`/`smash`
//! blocks run until a matching `end`.

use super::{
    AlgebraAst, CrossRule, MixedTerm, PolyTerm, PresentationAst, Relation, TensorTerm, Word,
    WordPoly, WordTensor,
};
use crate::error::{Error, Result};
use crate::scalars::{RatFunc, Rational};
use num::BigInt;

const KEYWORDS: &[&str] = &[
    "algebra",
    "generators",
    "relations",
    "basis",
    "coproduct",
    "counit",
    "antipode",
    "braiding",
    "dual",
    "pairing",
    "smash",
    "end",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
    Arrow,
    Eq,
    Semi,
}

#[derive(Debug, Clone)]
struct Sp {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, expected: &str) -> Error {
    Error::SyntaxError {
        line,
        col,
        expected: expected.to_string(),
    }
}

fn lex_line(text: &str, line_no: usize) -> Result<Vec<Sp>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '(' => {
                if bytes[i..].starts_with(b"(*)") {
                    out.push(Sp { tok: Tok::Tensor, line: line_no, col });
                    i += 3;
                } else {
                    out.push(Sp { tok: Tok::LParen, line: line_no, col });
                    i += 1;
                }
            }
            ')' => {
                out.push(Sp { tok: Tok::RParen, line: line_no, col });
                i += 1;
            }
            '-' => {
                if bytes[i..].starts_with(b"->") {
                    out.push(Sp { tok: Tok::Arrow, line: line_no, col });
                    i += 2;
                } else {
                    out.push(Sp { tok: Tok::Minus, line: line_no, col });
                    i += 1;
                }
            }
            '+' => {
                out.push(Sp { tok: Tok::Plus, line: line_no, col });
                i += 1;
            }
            '*' => {
                out.push(Sp { tok: Tok::Star, line: line_no, col });
                i += 1;
            }
            '/' => {
                out.push(Sp { tok: Tok::Slash, line: line_no, col });
                i += 1;
            }
            '^' => {
                out.push(Sp { tok: Tok::Caret, line: line_no, col });
                i += 1;
            }
            '=' => {
                out.push(Sp { tok: Tok::Eq, line: line_no, col });
                i += 1;
            }
            ';' => {
                out.push(Sp { tok: Tok::Semi, line: line_no, col });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i]
                    .parse()
                    .map_err(|_| syntax(line_no, col, "integer"))?;
                out.push(Sp { tok: Tok::Int(n), line: line_no, col });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Sp {
                    tok: Tok::Ident(text[start..i].to_string()),
                    line: line_no,
                    col,
                });
            }
            _ => return Err(syntax(line_no, col, "token")),
        }
    }
    Ok(out)
}

/// A symbol resolves to a generator of the primary algebra (`h = false`)
/// or of the dual companion (`h = true`).
#[derive(Clone, Copy, PartialEq)]
struct Sym {
    h: bool,
    idx: usize,
}

struct SymTab<'a> {
    a: &'a [String],
    h: Option<&'a [String]>,
}

impl SymTab<'_> {
    fn lookup(&self, name: &str) -> Option<Sym> {
        if let Some(i) = self.a.iter().position(|g| g == name) {
            return Some(Sym { h: false, idx: i });
        }
        if let Some(hs) = self.h {
            if let Some(i) = hs.iter().position(|g| g == name) {
                return Some(Sym { h: true, idx: i });
            }
        }
        None
    }
}

/// Evaluated expression value: a scalar, a polynomial in generator words,
/// or a sum of tensor-square terms.
#[derive(Clone)]
enum Val {
    Scalar(RatFunc),
    Poly(Vec<(RatFunc, Vec<Sym>)>),
    Tensor(Vec<(RatFunc, Vec<Sym>, Vec<Sym>)>),
}

impl Val {
    fn to_poly(self) -> Vec<(RatFunc, Vec<Sym>)> {
        match self {
            Val::Scalar(c) => {
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(c, Vec::new())]
                }
            }
            Val::Poly(t) => t,
            Val::Tensor(_) => unreachable!("checked by callers"),
        }
    }
}

fn combine_poly(mut terms: Vec<(RatFunc, Vec<Sym>)>) -> Vec<(RatFunc, Vec<Sym>)> {
    let mut out: Vec<(RatFunc, Vec<Sym>)> = Vec::new();
    for (c, w) in terms.drain(..) {
        if c.is_zero() {
            continue;
        }
        if let Some(e) = out.iter_mut().find(|(_, ew)| *ew == w) {
            e.0 = &e.0 + &c;
        } else {
            out.push((c, w));
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}

fn combine_tensor(
    mut terms: Vec<(RatFunc, Vec<Sym>, Vec<Sym>)>,
) -> Vec<(RatFunc, Vec<Sym>, Vec<Sym>)> {
    let mut out: Vec<(RatFunc, Vec<Sym>, Vec<Sym>)> = Vec::new();
    for (c, l, r) in terms.drain(..) {
        if c.is_zero() {
            continue;
        }
        if let Some(e) = out.iter_mut().find(|(_, el, er)| *el == l && *er == r) {
            e.0 = &e.0 + &c;
        } else {
            out.push((c, l, r));
        }
    }
    out.retain(|(c, _, _)| !c.is_zero());
    out
}

struct ExprParser<'a> {
    toks: &'a [Sp],
    pos: usize,
    tab: &'a SymTab<'a>,
    line: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(s) => (s.line, s.col),
            None => (self.line, 0),
        }
    }

    fn err(&self, expected: &str) -> Error {
        let (l, c) = self.here();
        syntax(l, c, expected)
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = self.tensor_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.tensor_term()?;
                    acc = self.add(acc, rhs, false)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.tensor_term()?;
                    acc = self.add(acc, rhs, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn tensor_term(&mut self) -> Result<Val> {
        let mut acc = self.product()?;
        while let Some(Tok::Tensor) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = self.tensor(acc, rhs)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = self.mul(acc, rhs)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = self.div(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Val> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let v = self.factor()?;
            return Ok(self.negate(v));
        }
        let mut base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exp = self.int_exponent()?;
            base = self.pow(base, exp)?;
        }
        Ok(base)
    }

    fn int_exponent(&mut self) -> Result<i64> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let v: i64 = n.try_into().map_err(|_| self.err("small integer exponent"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Val> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Val::Scalar(RatFunc::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "q" {
                    return Ok(Val::Scalar(RatFunc::q()));
                }
                match self.tab.lookup(&name) {
                    Some(sym) => Ok(Val::Poly(vec![(RatFunc::one(), vec![sym])])),
                    None => Err(Error::UnknownSymbol(name)),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(self.err(")")),
                }
            }
            _ => Err(self.err("expression")),
        }
    }

    fn tensor(&self, a: Val, b: Val) -> Result<Val> {
        match (a, b) {
            (Val::Tensor(_), _) | (_, Val::Tensor(_)) => {
                Err(self.err("rank-2 tensor (only one (*) per term)"))
            }
            (x, y) => {
                let xs = x.to_poly();
                let ys = y.to_poly();
                let mut out = Vec::new();
                for (cx, wx) in &xs {
                    for (cy, wy) in &ys {
                        out.push((cx * cy, wx.clone(), wy.clone()));
                    }
                }
                Ok(Val::Tensor(combine_tensor(out)))
            }
        }
    }

    fn negate(&self, v: Val) -> Val {
        let m = RatFunc::from_int(-1);
        match v {
            Val::Scalar(c) => Val::Scalar(&c * &m),
            Val::Poly(t) => Val::Poly(t.into_iter().map(|(c, w)| (&c * &m, w)).collect()),
            Val::Tensor(t) => {
                Val::Tensor(t.into_iter().map(|(c, l, r)| (&c * &m, l, r)).collect())
            }
        }
    }

    fn add(&self, a: Val, b: Val, subtract: bool) -> Result<Val> {
        let b = if subtract { self.negate(b) } else { b };
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(&x + &y)),
            (Val::Tensor(x), Val::Tensor(mut y)) => {
                let mut t = x;
                t.append(&mut y);
                Ok(Val::Tensor(combine_tensor(t)))
            }
            (Val::Tensor(_), _) | (_, Val::Tensor(_)) => {
                Err(self.err("matching tensor ranks in a sum"))
            }
            (x, y) => {
                let mut t = x.to_poly();
                t.append(&mut y.to_poly());
                Ok(Val::Poly(combine_poly(t)))
            }
        }
    }

    fn mul(&self, a: Val, b: Val) -> Result<Val> {
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(&x * &y)),
            (Val::Scalar(x), Val::Tensor(t)) | (Val::Tensor(t), Val::Scalar(x)) => Ok(
                Val::Tensor(t.into_iter().map(|(c, l, r)| (&c * &x, l, r)).collect()),
            ),
            (Val::Tensor(_), _) | (_, Val::Tensor(_)) => {
                Err(self.err("scalar factor on a tensor term"))
            }
            (x, y) => {
                let xs = x.to_poly();
                let ys = y.to_poly();
                let mut out = Vec::new();
                for (cx, wx) in &xs {
                    for (cy, wy) in &ys {
                        let mut w = wx.clone();
                        w.extend_from_slice(wy);
                        out.push((cx * cy, w));
                    }
                }
                Ok(Val::Poly(combine_poly(out)))
            }
        }
    }

    fn div(&self, a: Val, b: Val) -> Result<Val> {
        let d = match b {
            Val::Scalar(c) => c,
            Val::Poly(t) if t.len() == 1 && t[0].1.is_empty() => t[0].0.clone(),
            _ => return Err(self.err("scalar divisor")),
        };
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.mul(a, Val::Scalar(d.inv()?))
    }

    fn pow(&self, base: Val, exp: i64) -> Result<Val> {
        match base {
            Val::Scalar(c) => Ok(Val::Scalar(c.pow(exp)?)),
            Val::Poly(t) if t.len() == 1 && t[0].0.is_one() => {
                if exp < 0 {
                    return Err(self.err("nonnegative word exponent"));
                }
                let mut w = Vec::new();
                for _ in 0..exp {
                    w.extend_from_slice(&t[0].1);
                }
                Ok(Val::Poly(vec![(RatFunc::one(), w)]))
            }
            _ => Err(self.err("scalar or word base for ^")),
        }
    }
}

fn eval(toks: &[Sp], tab: &SymTab, line: usize) -> Result<Val> {
    let mut p = ExprParser { toks, pos: 0, tab, line };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("end of expression"));
    }
    Ok(v)
}

fn word_from_syms(syms: &[Sym], want_h: bool, line: usize) -> Result<Word> {
    let mut out = Vec::with_capacity(syms.len());
    for s in syms {
        if s.h != want_h {
            return Err(syntax(line, 0, "word confined to one algebra"));
        }
        out.push(s.idx);
    }
    Ok(out)
}

fn to_word_poly(v: Val, want_h: bool, line: usize) -> Result<WordPoly> {
    match v {
        Val::Tensor(_) => Err(syntax(line, 0, "polynomial, not a tensor")),
        other => other
            .to_poly()
            .into_iter()
            .map(|(c, w)| {
                Ok(PolyTerm {
                    coeff: c,
                    word: word_from_syms(&w, want_h, line)?,
                })
            })
            .collect(),
    }
}

fn to_word_tensor(v: Val, want_h: bool, line: usize) -> Result<WordTensor> {
    let terms = match v {
        Val::Tensor(t) => t,
        Val::Scalar(c) if c.is_zero() => Vec::new(),
        Val::Poly(t) if t.is_empty() => Vec::new(),
        _ => return Err(syntax(line, 0, "tensor expression with (*)")),
    };
    terms
        .into_iter()
        .map(|(c, l, r)| {
            Ok(TensorTerm {
                coeff: c,
                left: word_from_syms(&l, want_h, line)?,
                right: word_from_syms(&r, want_h, line)?,
            })
        })
        .collect()
}

/// Splits a mixed word into its normal-ordered (A-part, H-part) factors.
fn to_mixed_terms(v: Val, line: usize) -> Result<Vec<MixedTerm>> {
    v.to_poly()
        .into_iter()
        .map(|(c, w)| {
            let split = w.iter().position(|s| s.h).unwrap_or(w.len());
            if w[split..].iter().any(|s| !s.h) {
                return Err(syntax(line, 0, "normal-ordered word (A factors before H)"));
            }
            Ok(MixedTerm {
                coeff: c,
                a_word: w[..split].iter().map(|s| s.idx).collect(),
                h_word: w[split..].iter().map(|s| s.idx).collect(),
            })
        })
        .collect()
}

fn to_scalar(v: Val, line: usize) -> Result<RatFunc> {
    match v {
        Val::Scalar(c) => Ok(c),
        Val::Poly(t) if t.is_empty() => Ok(RatFunc::zero()),
        Val::Poly(t) if t.len() == 1 && t[0].1.is_empty() => Ok(t[0].0.clone()),
        _ => Err(syntax(line, 0, "scalar expression")),
    }
}

/// A single monomial with coefficient 1: the only admissible left-hand side
/// of a relation, braiding rule, or cross rule.
fn to_monomial(v: Val, line: usize) -> Result<Vec<Sym>> {
    match v {
        Val::Poly(t) if t.len() == 1 && t[0].0.is_one() && !t[0].1.is_empty() => {
            Ok(t[0].1.clone())
        }
        _ => Err(syntax(line, 0, "single monomial with coefficient 1")),
    }
}

struct Line {
    no: usize,
    toks: Vec<Sp>,
}

fn first_keyword(line: &Line) -> Option<&str> {
    match &line.toks[0].tok {
        Tok::Ident(w) if KEYWORDS.contains(&w.as_str()) => Some(w.as_str()),
        _ => None,
    }
}

/// Splits a token slice at top-level `;` separators.
fn split_semi(toks: &[Sp]) -> Vec<&[Sp]> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, t) in toks.iter().enumerate() {
        if matches!(t.tok, Tok::Semi) {
            out.push(&toks[start..i]);
            start = i + 1;
        }
    }
    out.push(&toks[start..]);
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

fn split_arrow(toks: &[Sp]) -> Result<(&[Sp], &[Sp])> {
    let pos = toks
        .iter()
        .position(|t| matches!(t.tok, Tok::Arrow))
        .ok_or_else(|| syntax(toks[0].line, toks[0].col, "->"))?;
    Ok((&toks[..pos], &toks[pos + 1..]))
}

fn split_eq(toks: &[Sp]) -> Result<(&[Sp], &[Sp])> {
    let pos = toks
        .iter()
        .position(|t| matches!(t.tok, Tok::Eq))
        .ok_or_else(|| syntax(toks[0].line, toks[0].col, "="))?;
    Ok((&toks[..pos], &toks[pos + 1..]))
}

/// Groups a flat token run into generator words: a word is an identifier
/// (or the literal `1` for the empty word) extended by `*ident` and
/// `^int` links.
fn parse_word_list(toks: &[Sp], gens: &[String]) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let t = &toks[i];
        let mut word: Word = match &t.tok {
            Tok::Int(n) if *n == BigInt::from(1) => {
                i += 1;
                Vec::new()
            }
            Tok::Ident(name) => {
                let g = gens
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                i += 1;
                vec![g]
            }
            _ => return Err(syntax(t.line, t.col, "basis word")),
        };
        loop {
            match toks.get(i).map(|s| &s.tok) {
                Some(Tok::Star) => {
                    i += 1;
                    match toks.get(i) {
                        Some(Sp { tok: Tok::Ident(name), .. }) => {
                            let g = gens
                                .iter()
                                .position(|x| x == name)
                                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                            word.push(g);
                            i += 1;
                        }
                        _ => return Err(syntax(t.line, t.col, "generator after *")),
                    }
                }
                Some(Tok::Caret) => {
                    i += 1;
                    match toks.get(i) {
                        Some(Sp { tok: Tok::Int(n), .. }) => {
                            let k: usize = n
                                .clone()
                                .try_into()
                                .map_err(|_| syntax(t.line, t.col, "small power"))?;
                            if k == 0 || word.is_empty() {
                                return Err(syntax(t.line, t.col, "positive power of a generator"));
                            }
                            let last = *word.last().expect("nonempty");
                            for _ in 1..k {
                                word.push(last);
                            }
                            i += 1;
                        }
                        _ => return Err(syntax(t.line, t.col, "integer after ^")),
                    }
                }
                _ => break,
            }
        }
        out.push(word);
    }
    Ok(out)
}

struct AlgebraParser<'a> {
    lines: &'a [Line],
    pos: usize,
}

impl AlgebraParser<'_> {
    /// Parses one algebra block, stopping before `dual`, `pairing`,
    /// `smash`, `end`, or end of input.
    fn parse(&mut self) -> Result<AlgebraAst> {
        let header = self
            .next_section()
            .ok_or_else(|| syntax(1, 1, "algebra header"))?;
        if first_keyword(&header) != Some("algebra") {
            return Err(syntax(header.no, 1, "algebra"));
        }
        let mut it = header.toks[1..].iter();
        let name = match it.next() {
            Some(Sp { tok: Tok::Ident(n), .. }) => n.clone(),
            _ => return Err(syntax(header.no, 1, "algebra name")),
        };
        let uses_q = match it.next() {
            None => false,
            Some(Sp { tok: Tok::Ident(w), .. }) if w == "over" => true,
            Some(s) => return Err(syntax(s.line, s.col, "over Q(q)")),
        };

        let mut gens: Vec<String> = Vec::new();
        let mut relations = Vec::new();
        let mut basis: Option<Vec<Word>> = None;
        let mut coproduct: Vec<Option<WordTensor>> = Vec::new();
        let mut counit: Vec<Option<RatFunc>> = Vec::new();
        let mut antipode: Vec<Option<WordPoly>> = Vec::new();
        let mut braiding: Option<Vec<Vec<Option<WordTensor>>>> = None;

        while let Some(section) = self.peek_section() {
            let keyword = match first_keyword(section) {
                Some(k) if k != "algebra" => k.to_string(),
                _ => break,
            };
            if matches!(keyword.as_str(), "dual" | "pairing" | "smash" | "end") {
                break;
            }
            let section = self.next_section().expect("peeked");
            let inline = section.toks[1..].to_vec();
            let mut body: Vec<(usize, Vec<Sp>)> = Vec::new();
            if !inline.is_empty() {
                body.push((section.no, inline));
            }
            while let Some(next) = self.peek_section() {
                if first_keyword(next).is_some() {
                    break;
                }
                let l = self.next_section().expect("peeked");
                body.push((l.no, l.toks));
            }
            let tab = SymTab { a: &gens, h: None };
            match keyword.as_str() {
                "generators" => {
                    for (no, toks) in &body {
                        for t in toks {
                            match &t.tok {
                                Tok::Ident(n)
                                    if n != "q" && !KEYWORDS.contains(&n.as_str()) =>
                                {
                                    if gens.contains(n) {
                                        return Err(Error::DuplicateGenerator(n.clone()));
                                    }
                                    gens.push(n.clone());
                                }
                                _ => return Err(syntax(*no, t.col, "generator name")),
                            }
                        }
                    }
                    coproduct = vec![None; gens.len()];
                    counit = vec![None; gens.len()];
                    antipode = vec![None; gens.len()];
                }
                "relations" => {
                    for (no, toks) in &body {
                        for part in split_semi(toks) {
                            let (l, r) = split_eq(part)?;
                            let lhs = to_monomial(eval(l, &tab, *no)?, *no)?;
                            let lhs = word_from_syms(&lhs, false, *no)?;
                            let rhs = to_word_poly(eval(r, &tab, *no)?, false, *no)?;
                            relations.push(Relation { lhs, rhs });
                        }
                    }
                }
                "basis" => {
                    let mut words = Vec::new();
                    for (_, toks) in &body {
                        words.extend(parse_word_list(toks, &gens)?);
                    }
                    if words.first().map(|w| w.is_empty()) != Some(true) {
                        return Err(syntax(section.no, 1, "basis starting with 1"));
                    }
                    basis = Some(words);
                }
                "coproduct" | "counit" | "antipode" => {
                    for (no, toks) in &body {
                        for part in split_semi(toks) {
                            let (l, r) = split_arrow(part)?;
                            let g = match l {
                                [Sp { tok: Tok::Ident(n), .. }] => gens
                                    .iter()
                                    .position(|x| x == n)
                                    .ok_or_else(|| Error::UnknownSymbol(n.clone()))?,
                                _ => return Err(syntax(*no, 1, "generator name before ->")),
                            };
                            let v = eval(r, &tab, *no)?;
                            match keyword.as_str() {
                                "coproduct" => {
                                    coproduct[g] = Some(to_word_tensor(v, false, *no)?)
                                }
                                "counit" => counit[g] = Some(to_scalar(v, *no)?),
                                _ => antipode[g] = Some(to_word_poly(v, false, *no)?),
                            }
                        }
                    }
                }
                "braiding" => {
                    let table =
                        braiding.get_or_insert(vec![vec![None; gens.len()]; gens.len()]);
                    for (no, toks) in &body {
                        for part in split_semi(toks) {
                            let (l, r) = split_arrow(part)?;
                            let lhs = to_word_tensor(eval(l, &tab, *no)?, false, *no)?;
                            let (i, j) = match &lhs[..] {
                                [TensorTerm { coeff, left, right }]
                                    if coeff.is_one()
                                        && left.len() == 1
                                        && right.len() == 1 =>
                                {
                                    (left[0], right[0])
                                }
                                _ => {
                                    return Err(syntax(*no, 1, "gen(*)gen before ->"));
                                }
                            };
                            table[i][j] =
                                Some(to_word_tensor(eval(r, &tab, *no)?, false, *no)?);
                        }
                    }
                }
                other => return Err(syntax(section.no, 1, &format!("section (got {other})"))),
            }
        }

        let basis = basis.ok_or_else(|| syntax(header.no, 1, "basis section"))?;
        fn unwrap_all<T>(
            v: Vec<Option<T>>,
            what: &str,
            gens: &[String],
            line: usize,
        ) -> Result<Vec<T>> {
            v.into_iter()
                .enumerate()
                .map(|(g, o)| {
                    o.ok_or_else(|| {
                        syntax(line, 1, &format!("{what} for generator {}", gens[g]))
                    })
                })
                .collect()
        }
        Ok(AlgebraAst {
            name,
            uses_q,
            generators: gens.clone(),
            relations,
            basis,
            coproduct: unwrap_all(coproduct, "coproduct", &gens, header.no)?,
            counit: unwrap_all(counit, "counit", &gens, header.no)?,
            antipode: unwrap_all(antipode, "antipode", &gens, header.no)?,
            braiding,
        })
    }

    fn peek_section(&self) -> Option<&Line> {
        self.lines.get(self.pos)
    }

    fn next_section(&mut self) -> Option<Line> {
        let l = self.lines.get(self.pos)?;
        self.pos += 1;
        Some(Line { no: l.no, toks: l.toks.clone() })
    }
}

pub fn parse(text: &str) -> Result<PresentationAst> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = lex_line(raw, i + 1)?;
        if !toks.is_empty() {
            lines.push(Line { no: i + 1, toks });
        }
    }
    let mut p = AlgebraParser { lines: &lines, pos: 0 };
    let algebra = p.parse()?;

    let mut dual: Option<AlgebraAst> = None;
    let mut pairing = Vec::new();
    let mut cross = Vec::new();

    if let Some(line) = p.peek_section() {
        if first_keyword(line) == Some("dual") {
            let no = line.no;
            if line.toks.len() != 1 {
                return Err(syntax(no, 1, "bare dual line"));
            }
            p.pos += 1;
            let companion = p.parse()?;
            for g in &companion.generators {
                if algebra.generators.contains(g) {
                    return Err(Error::DuplicateGenerator(g.clone()));
                }
            }
            // optional pairing section inside the dual block
            if let Some(l) = p.peek_section() {
                if first_keyword(l) == Some("pairing") {
                    let head = p.next_section().expect("peeked");
                    let mut body: Vec<(usize, Vec<Sp>)> = Vec::new();
                    if head.toks.len() > 1 {
                        body.push((head.no, head.toks[1..].to_vec()));
                    }
                    while let Some(next) = p.peek_section() {
                        if first_keyword(next).is_some() {
                            break;
                        }
                        let l = p.next_section().expect("peeked");
                        body.push((l.no, l.toks));
                    }
                    let tab = SymTab {
                        a: &algebra.generators,
                        h: Some(&companion.generators),
                    };
                    for (lno, toks) in &body {
                        for part in split_semi(toks) {
                            let (l, r) = split_arrow(part)?;
                            let lhs = to_word_tensor_mixed(eval(l, &tab, *lno)?, *lno)?;
                            let value = to_scalar(eval(r, &tab, *lno)?, *lno)?;
                            pairing.push((lhs.0, lhs.1, value));
                        }
                    }
                }
            }
            match p.next_section() {
                Some(l) if first_keyword(&l) == Some("end") => {}
                _ => return Err(syntax(no, 1, "end closing the dual block")),
            }
            dual = Some(companion);
        }
    }

    if let Some(line) = p.peek_section() {
        if first_keyword(line) == Some("smash") {
            let no = line.no;
            let d = dual
                .as_ref()
                .ok_or_else(|| syntax(no, 1, "dual block before smash"))?;
            p.pos += 1;
            let tab = SymTab {
                a: &algebra.generators,
                h: Some(&d.generators),
            };
            loop {
                let l = p
                    .next_section()
                    .ok_or_else(|| syntax(no, 1, "end closing the smash block"))?;
                if first_keyword(&l) == Some("end") {
                    break;
                }
                for part in split_semi(&l.toks) {
                    let (lt, rt) = split_arrow(part)?;
                    let lhs = to_monomial(eval(lt, &tab, l.no)?, l.no)?;
                    let (h_gen, a_gen) = match &lhs[..] {
                        [x, y] if x.h && !y.h => (x.idx, y.idx),
                        _ => return Err(syntax(l.no, 1, "H-gen * A-gen before ->")),
                    };
                    let rhs = to_mixed_terms(eval(rt, &tab, l.no)?, l.no)?;
                    cross.push(CrossRule { h_gen, a_gen, rhs });
                }
            }
        }
    }

    if let Some(l) = p.peek_section() {
        return Err(syntax(l.no, 1, "end of input"));
    }
    Ok(PresentationAst { algebra, dual, pairing, cross })
}

/// Parses a standalone polynomial expression over the given generators
/// (used for element expressions outside a `.hopf` file).
pub(super) fn parse_expr_poly(text: &str, gens: &[String]) -> Result<WordPoly> {
    let toks = lex_line(text, 1)?;
    if toks.is_empty() {
        return Err(syntax(1, 1, "expression"));
    }
    let tab = SymTab { a: gens, h: None };
    to_word_poly(eval(&toks, &tab, 1)?, false, 1)
}

/// Pairing LHS: `hword (*) aword` as a single tensor term with unit
/// coefficient; components may be the empty word `1`.
fn to_word_tensor_mixed(v: Val, line: usize) -> Result<(Word, Word)> {
    match v {
        Val::Tensor(t) if t.len() == 1 && t[0].0.is_one() => {
            let (_, l, r) = &t[0];
            Ok((
                word_from_syms(l, true, line)?,
                word_from_syms(r, false, line)?,
            ))
        }
        _ => Err(syntax(line, 0, "hword(*)aword with coefficient 1")),
    }
}
