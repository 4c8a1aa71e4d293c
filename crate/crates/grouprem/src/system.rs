//! Equation systems over a finite group, with a concrete text syntax.
//!
//! Three shapes exist. A sum system constrains signed sums of variables to
//! the identity of an abelian group ("x1 + x2 - x3 = 0"). A word system
//! constrains ordered products, valid in any group ("x1 x2 x4^-1 x3^-1 = 1").
//! A single plain-product equation may carry an arbitrary right-hand side
//! element ("x1 x2 x3 = g5"). Equations are separated by ";".

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::linalg;
use std::fmt;

/// Cap on the number of variables a system may mention.
pub const MAX_VARIABLES: usize = 64;

/// A system of k independent linear equations over m variables with
/// coefficients in {-1, 0, +1}; right-hand sides are fixed to the identity.
/// Meaningful over abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSystem {
    epsilon: Vec<Vec<i64>>,
    m: usize,
}

/// A system of k independent word equations: each left-hand side is an
/// ordered product of distinct variables with exponents +-1, set equal to
/// the identity. Valid over any group; the order of factors matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedSystem {
    words: Vec<Vec<(usize, i8)>>,
    m: usize,
}

/// The plain product x1 x2 ... xm = g for a designated element g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleEquation {
    m: usize,
    rhs: usize,
}

/// Any of the three system shapes, as returned by the parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquationSystem {
    Abelian(AbelianSystem),
    Ordered(OrderedSystem),
    Single(SingleEquation),
}

fn check_variable_count(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "a system needs at least two variables".into(),
        ));
    }
    if m > MAX_VARIABLES {
        return Err(Error::SizeLimit(format!(
            "system mentions {m} variables, cap is {MAX_VARIABLES}"
        )));
    }
    Ok(())
}

fn check_columns_used(rows: &[Vec<i64>]) -> Result<()> {
    let m = rows[0].len();
    for j in 0..m {
        if rows.iter().all(|r| r[j] == 0) {
            return Err(Error::InvalidParameter(format!(
                "variable x{} appears in no equation",
                j + 1
            )));
        }
    }
    Ok(())
}

fn check_independent(rows: &[Vec<i64>]) -> Result<()> {
    if let Some(row) = linalg::first_dependent_row(rows)? {
        return Err(Error::IndependenceViolation { row });
    }
    Ok(())
}

impl AbelianSystem {
    /// Builds a sum system from its coefficient matrix. Rows must be the
    /// same length, entries in {-1, 0, +1}, every column nonzero, and rows
    /// independent over the rationals.
    pub fn new(epsilon: Vec<Vec<i64>>) -> Result<Self> {
        if epsilon.is_empty() {
            return Err(Error::InvalidParameter(
                "a system needs at least one equation".into(),
            ));
        }
        let m = epsilon[0].len();
        check_variable_count(m)?;
        for (i, row) in epsilon.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidParameter(format!(
                    "equation {i} has {} coefficients, expected {m}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| !(-1..=1).contains(&e)) {
                return Err(Error::InvalidParameter(format!(
                    "coefficient {bad} in equation {i} outside {{-1, 0, 1}}"
                )));
            }
        }
        check_columns_used(&epsilon)?;
        check_independent(&epsilon)?;
        Ok(Self { m, epsilon })
    }

    pub fn num_equations(&self) -> usize {
        self.epsilon.len()
    }

    pub fn num_variables(&self) -> usize {
        self.m
    }

    /// Row i is the vector of net variable exponents of equation i.
    pub fn characteristic_vectors(&self) -> Vec<Vec<i64>> {
        self.epsilon.clone()
    }

    pub fn coefficient(&self, equation: usize, variable: usize) -> i64 {
        self.epsilon[equation][variable]
    }

    /// Whether the assignment solves every equation, evaluating factors in
    /// ascending variable order. Order is immaterial precisely when the
    /// group is abelian; callers counting solutions enforce that.
    pub fn satisfies(&self, group: &GroupTable, assignment: &[usize]) -> bool {
        debug_assert_eq!(assignment.len(), self.m);
        self.epsilon.iter().all(|row| {
            let mut acc = group.identity();
            for (j, &e) in row.iter().enumerate() {
                match e {
                    1 => acc = group.mul(acc, assignment[j]),
                    -1 => acc = group.mul(acc, group.inv(assignment[j])),
                    _ => {}
                }
            }
            acc == group.identity()
        })
    }
}

impl OrderedSystem {
    /// Builds a word system. Each word lists (variable, exponent) pairs in
    /// product order with exponents +-1; a variable may appear at most once
    /// per word; every variable must appear somewhere; the induced net
    /// exponent vectors must be independent over the rationals.
    pub fn new(words: Vec<Vec<(usize, i8)>>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidParameter(
                "a system needs at least one equation".into(),
            ));
        }
        let mut m = 0;
        for (i, word) in words.iter().enumerate() {
            if word.is_empty() {
                return Err(Error::InvalidParameter(format!("equation {i} is empty")));
            }
            for &(v, e) in word {
                if e != 1 && e != -1 {
                    return Err(Error::InvalidParameter(format!(
                        "exponent {e} on x{} in equation {i} outside {{-1, +1}}",
                        v + 1
                    )));
                }
                m = m.max(v + 1);
            }
            for (p, &(v, _)) in word.iter().enumerate() {
                if word[..p].iter().any(|&(w, _)| w == v) {
                    return Err(Error::InvalidParameter(format!(
                        "variable x{} appears twice in equation {i}",
                        v + 1
                    )));
                }
            }
        }
        check_variable_count(m)?;
        let sys = Self { words, m };
        let shadow = sys.characteristic_vectors();
        check_columns_used(&shadow)?;
        check_independent(&shadow)?;
        Ok(sys)
    }

    pub fn num_equations(&self) -> usize {
        self.words.len()
    }

    pub fn num_variables(&self) -> usize {
        self.m
    }

    pub fn words(&self) -> &[Vec<(usize, i8)>] {
        &self.words
    }

    /// Net exponent of each variable per equation; entries in {-1, 0, +1}
    /// because a variable occurs at most once per word.
    pub fn characteristic_vectors(&self) -> Vec<Vec<i64>> {
        self.words
            .iter()
            .map(|word| {
                let mut row = vec![0i64; self.m];
                for &(v, e) in word {
                    row[v] = e as i64;
                }
                row
            })
            .collect()
    }

    /// The sum system with the same characteristic vectors, i.e. what this
    /// system asserts when the group happens to be abelian.
    pub fn abelian_shadow(&self) -> AbelianSystem {
        AbelianSystem::new(self.characteristic_vectors())
            .expect("shadow of a valid word system is a valid sum system")
    }

    /// Whether the assignment solves every word, multiplied strictly left
    /// to right.
    pub fn satisfies(&self, group: &GroupTable, assignment: &[usize]) -> bool {
        debug_assert_eq!(assignment.len(), self.m);
        self.words.iter().all(|word| {
            let mut acc = group.identity();
            for &(v, e) in word {
                let x = assignment[v];
                acc = group.mul(acc, if e == 1 { x } else { group.inv(x) });
            }
            acc == group.identity()
        })
    }
}

impl SingleEquation {
    pub fn new(m: usize, rhs: usize) -> Result<Self> {
        check_variable_count(m)?;
        Ok(Self { m, rhs })
    }

    pub fn num_variables(&self) -> usize {
        self.m
    }

    /// The right-hand side as a group element index; range-checked against
    /// the group where the equation is used.
    pub fn rhs(&self) -> usize {
        self.rhs
    }

    pub fn with_rhs(&self, rhs: usize) -> Self {
        Self { m: self.m, rhs }
    }

    pub fn characteristic_vectors(&self) -> Vec<Vec<i64>> {
        vec![vec![1; self.m]]
    }

    pub fn satisfies(&self, group: &GroupTable, assignment: &[usize]) -> bool {
        debug_assert_eq!(assignment.len(), self.m);
        debug_assert!(self.rhs < group.order());
        group.product(assignment.iter().copied()) == self.rhs
    }
}

impl EquationSystem {
    pub fn num_variables(&self) -> usize {
        match self {
            EquationSystem::Abelian(s) => s.num_variables(),
            EquationSystem::Ordered(s) => s.num_variables(),
            EquationSystem::Single(s) => s.num_variables(),
        }
    }

    pub fn num_equations(&self) -> usize {
        match self {
            EquationSystem::Abelian(s) => s.num_equations(),
            EquationSystem::Ordered(s) => s.num_equations(),
            EquationSystem::Single(_) => 1,
        }
    }

    pub fn characteristic_vectors(&self) -> Vec<Vec<i64>> {
        match self {
            EquationSystem::Abelian(s) => s.characteristic_vectors(),
            EquationSystem::Ordered(s) => s.characteristic_vectors(),
            EquationSystem::Single(s) => s.characteristic_vectors(),
        }
    }

    pub fn satisfies(&self, group: &GroupTable, assignment: &[usize]) -> bool {
        match self {
            EquationSystem::Abelian(s) => s.satisfies(group, assignment),
            EquationSystem::Ordered(s) => s.satisfies(group, assignment),
            EquationSystem::Single(s) => s.satisfies(group, assignment),
        }
    }
}

impl fmt::Display for AbelianSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.epsilon.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let mut first = true;
            for (j, &e) in row.iter().enumerate() {
                match (e, first) {
                    (0, _) => continue,
                    (1, true) => write!(f, "x{}", j + 1)?,
                    (-1, true) => write!(f, "- x{}", j + 1)?,
                    (1, false) => write!(f, " + x{}", j + 1)?,
                    _ => write!(f, " - x{}", j + 1)?,
                }
                first = false;
            }
            write!(f, " = 0")?;
        }
        Ok(())
    }
}

impl fmt::Display for OrderedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, word) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (p, &(v, e)) in word.iter().enumerate() {
                if p > 0 {
                    write!(f, " ")?;
                }
                write!(f, "x{}", v + 1)?;
                if e == -1 {
                    write!(f, "^-1")?;
                }
            }
            write!(f, " = 1")?;
        }
        Ok(())
    }
}

impl fmt::Display for SingleEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.m {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", j + 1)?;
        }
        write!(f, " = g{}", self.rhs)
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationSystem::Abelian(s) => s.fmt(f),
            EquationSystem::Ordered(s) => s.fmt(f),
            EquationSystem::Single(s) => s.fmt(f),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tok {
    Var(usize), // zero-based
    Elem(usize),
    Num(u64),
    Plus,
    Minus,
    Eq,
    Caret,
    Semi,
}

#[derive(Clone, Copy, Debug)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: col,
        message: message.into(),
    }
}

struct Scanner {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn advance(&mut self) {
        if let Some(c) = self.peek() {
            self.i += 1;
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    fn digits(&mut self) -> Option<u64> {
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            any = true;
            value = value
                .saturating_mul(10)
                .saturating_add(c.to_digit(10).unwrap() as u64);
            self.advance();
        }
        any.then_some(value)
    }
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let mut s = Scanner {
        chars: text.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = s.peek() {
        if c.is_whitespace() {
            s.advance();
            continue;
        }
        let (line, col) = (s.line, s.col);
        let tok = match c {
            'x' => {
                s.advance();
                let n = s
                    .digits()
                    .ok_or_else(|| syntax(line, col, "expected digits after 'x'"))?;
                if n == 0 {
                    return Err(syntax(line, col, "variables are numbered from x1"));
                }
                if n as usize > MAX_VARIABLES {
                    return Err(syntax(
                        line,
                        col,
                        format!("variable x{n} exceeds the cap of {MAX_VARIABLES}"),
                    ));
                }
                Tok::Var(n as usize - 1)
            }
            'g' => {
                s.advance();
                let n = s
                    .digits()
                    .ok_or_else(|| syntax(line, col, "expected digits after 'g'"))?;
                Tok::Elem(n as usize)
            }
            '0'..='9' => Tok::Num(s.digits().expect("digit peeked")),
            '+' => {
                s.advance();
                Tok::Plus
            }
            '-' => {
                s.advance();
                Tok::Minus
            }
            '=' => {
                s.advance();
                Tok::Eq
            }
            '^' => {
                s.advance();
                Tok::Caret
            }
            ';' => {
                s.advance();
                Tok::Semi
            }
            other => return Err(syntax(line, col, format!("unexpected character '{other}'"))),
        };
        out.push(Lexed { tok, line, col });
    }
    Ok(out)
}

enum RawEq {
    Sum(Vec<(usize, i64)>),
    Word {
        factors: Vec<(usize, i8)>,
        rhs: Option<usize>, // None means "= 1"
    },
}

struct EqParser<'a> {
    toks: &'a [Lexed],
    pos: usize,
}

impl<'a> EqParser<'a> {
    fn peek(&self) -> Option<&Lexed> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Lexed> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    /// Position just past the last consumed token, for end-of-input errors.
    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos.min(self.toks.len() - 1)];
        (t.line, t.col)
    }

    fn expect_end(&mut self) -> Result<()> {
        if let Some(t) = self.peek() {
            return Err(syntax(t.line, t.col, "unexpected token after equation"));
        }
        Ok(())
    }

    fn expect_var(&mut self) -> Result<(usize, usize, usize)> {
        let (line, col) = self.here();
        match self.next() {
            Some(&Lexed {
                tok: Tok::Var(v),
                line,
                col,
            }) => Ok((v, line, col)),
            Some(t) => Err(syntax(t.line, t.col, "expected a variable")),
            None => Err(syntax(line, col, "expected a variable")),
        }
    }

    fn parse_sum(&mut self) -> Result<RawEq> {
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let mut sign = 1i64;
        if matches!(self.peek(), Some(Lexed { tok: Tok::Minus, .. })) {
            self.next();
            sign = -1;
        }
        loop {
            let (v, line, col) = self.expect_var()?;
            if terms.iter().any(|&(w, _)| w == v) {
                return Err(syntax(
                    line,
                    col,
                    format!("variable x{} appears twice in one equation", v + 1),
                ));
            }
            terms.push((v, sign));
            let (line, col) = self.here();
            match self.next().map(|t| (t.tok, t.line, t.col)) {
                Some((Tok::Plus, ..)) => sign = 1,
                Some((Tok::Minus, ..)) => sign = -1,
                Some((Tok::Eq, ..)) => break,
                Some((_, l, c)) => return Err(syntax(l, c, "expected '+', '-' or '='")),
                None => return Err(syntax(line, col, "expected '+', '-' or '='")),
            }
        }
        let (line, col) = self.here();
        match self.next().map(|t| (t.tok, t.line, t.col)) {
            Some((Tok::Num(0), ..)) => {}
            Some((_, l, c)) => {
                return Err(syntax(l, c, "right-hand side of a sum equation must be 0"))
            }
            None => {
                return Err(syntax(
                    line,
                    col,
                    "right-hand side of a sum equation must be 0",
                ))
            }
        }
        self.expect_end()?;
        Ok(RawEq::Sum(terms))
    }

    fn parse_word(&mut self) -> Result<RawEq> {
        let mut factors: Vec<(usize, i8)> = Vec::new();
        loop {
            let (v, line, col) = self.expect_var()?;
            let mut exp = 1i8;
            if matches!(self.peek(), Some(Lexed { tok: Tok::Caret, .. })) {
                self.next();
                let ok = matches!(self.next(), Some(Lexed { tok: Tok::Minus, .. }))
                    && matches!(self.next(), Some(Lexed { tok: Tok::Num(1), .. }));
                if !ok {
                    return Err(syntax(line, col, "the only supported exponent is ^-1"));
                }
                exp = -1;
            }
            if factors.iter().any(|&(w, _)| w == v) {
                return Err(syntax(
                    line,
                    col,
                    format!("variable x{} appears twice in one equation", v + 1),
                ));
            }
            factors.push((v, exp));
            match self.peek().map(|t| t.tok) {
                Some(Tok::Var(_)) => continue,
                Some(Tok::Eq) => {
                    self.next();
                    break;
                }
                _ => {
                    let (l, c) = self.here();
                    return Err(syntax(l, c, "expected a variable or '='"));
                }
            }
        }
        let (line, col) = self.here();
        let rhs = match self.next().map(|t| (t.tok, t.line, t.col)) {
            Some((Tok::Num(1), ..)) => None,
            Some((Tok::Elem(g), ..)) => Some(g),
            Some((_, l, c)) => {
                return Err(syntax(
                    l,
                    c,
                    "right-hand side of a word equation must be 1 or g<idx>",
                ))
            }
            None => {
                return Err(syntax(
                    line,
                    col,
                    "right-hand side of a word equation must be 1 or g<idx>",
                ))
            }
        };
        self.expect_end()?;
        Ok(RawEq::Word { factors, rhs })
    }

    fn parse_equation(&mut self) -> Result<RawEq> {
        match (self.toks.first().map(|t| t.tok), self.toks.get(1).map(|t| t.tok)) {
            (Some(Tok::Minus), _) => self.parse_sum(),
            (Some(Tok::Var(_)), Some(Tok::Var(_) | Tok::Caret)) => self.parse_word(),
            (Some(Tok::Var(_)), _) => self.parse_sum(),
            _ => {
                let (l, c) = self.here();
                Err(syntax(l, c, "an equation starts with a variable or '-'"))
            }
        }
    }
}

/// Parses the concrete syntax into one of the three system shapes.
///
/// Equations are ";"-separated. Sum equations use "+"/"-" between variables
/// and end in "= 0"; word equations juxtapose variables with optional "^-1"
/// and end in "= 1". A word ending in "= g<idx>" is the plain-product form:
/// it must be the only equation and list x1 ... xm in ascending order.
/// Forms cannot be mixed within one text.
pub fn parse_system(text: &str) -> Result<EquationSystem> {
    let toks = lex(text)?;
    let mut segments: Vec<&[Lexed]> = Vec::new();
    let mut start = 0;
    for (i, t) in toks.iter().enumerate() {
        if t.tok == Tok::Semi {
            if start == i {
                return Err(syntax(t.line, t.col, "empty equation"));
            }
            segments.push(&toks[start..i]);
            start = i + 1;
        }
    }
    if start < toks.len() {
        segments.push(&toks[start..]);
    }
    if segments.is_empty() {
        return Err(syntax(1, 1, "empty system"));
    }

    let mut raws = Vec::new();
    for seg in &segments {
        let mut p = EqParser { toks: seg, pos: 0 };
        raws.push((p.parse_equation()?, (seg[0].line, seg[0].col)));
    }

    let is_sum = |r: &RawEq| matches!(r, RawEq::Sum(_));
    if let Some((_, (l, c))) = raws
        .iter()
        .find(|(r, _)| is_sum(r) != is_sum(&raws[0].0))
    {
        return Err(syntax(*l, *c, "sum and word equations cannot be mixed"));
    }

    if let Some((l, c)) = raws.iter().find_map(|(r, at)| match r {
        RawEq::Word { rhs: Some(_), .. } => Some(*at),
        _ => None,
    }) {
        if raws.len() > 1 {
            return Err(syntax(
                l,
                c,
                "an equation with an element right-hand side must stand alone",
            ));
        }
        let RawEq::Word { factors, rhs } = &raws[0].0 else {
            unreachable!()
        };
        let plain = factors.iter().enumerate().all(|(j, &(v, e))| v == j && e == 1);
        if !plain {
            return Err(syntax(
                l,
                c,
                "an element right-hand side requires the plain product x1 x2 ... xm",
            ));
        }
        let single = SingleEquation::new(factors.len(), rhs.expect("matched Some"))?;
        return Ok(EquationSystem::Single(single));
    }

    if is_sum(&raws[0].0) {
        let m = raws
            .iter()
            .map(|(r, _)| match r {
                RawEq::Sum(terms) => terms.iter().map(|&(v, _)| v + 1).max().unwrap_or(0),
                _ => unreachable!(),
            })
            .max()
            .unwrap();
        let rows = raws
            .iter()
            .map(|(r, _)| {
                let RawEq::Sum(terms) = r else { unreachable!() };
                let mut row = vec![0i64; m];
                for &(v, s) in terms {
                    row[v] = s;
                }
                row
            })
            .collect();
        Ok(EquationSystem::Abelian(AbelianSystem::new(rows)?))
    } else {
        let words = raws
            .into_iter()
            .map(|(r, _)| match r {
                RawEq::Word { factors, .. } => factors,
                _ => unreachable!(),
            })
            .collect();
        Ok(EquationSystem::Ordered(OrderedSystem::new(words)?))
    }
}
