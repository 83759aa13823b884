//! Recursive-descent parser for the surface syntax.
//!
//! Grammar, loosest first (`->` and `<->` associate right, `&` and `|` left):
//!
//! ```text
//! iff   := imp ('<->' iff)?
//! imp   := or  ('->' imp)?
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := ('~' | '<>' | '[]' | 'A' | 'E') unary | atom
//! atom  := 'p' digits | '(' iff ')'
//! ```
//!
//! The parser builds a surface tree and desugars it into [`Formula`] primitives.

use super::Formula;
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Default cap on variable indices (exclusive).
pub const DEFAULT_VAR_BUDGET: u32 = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    UnexpectedChar { ch: char, line: u32, col: u32 },
    MissingDigits { line: u32, col: u32 },
    VarBudget { index: u64, budget: u32, line: u32, col: u32 },
    UnexpectedEnd { expected: &'static str, line: u32, col: u32 },
    UnexpectedToken { expected: &'static str, found: String, line: u32, col: u32 },
    TrailingInput { found: String, line: u32, col: u32 },
}

impl ParseError {
    pub fn line(&self) -> u32 {
        match self {
            ParseError::UnexpectedChar { line, .. }
            | ParseError::MissingDigits { line, .. }
            | ParseError::VarBudget { line, .. }
            | ParseError::UnexpectedEnd { line, .. }
            | ParseError::UnexpectedToken { line, .. }
            | ParseError::TrailingInput { line, .. } => *line,
        }
    }

    pub fn column(&self) -> u32 {
        match self {
            ParseError::UnexpectedChar { col, .. }
            | ParseError::MissingDigits { col, .. }
            | ParseError::VarBudget { col, .. }
            | ParseError::UnexpectedEnd { col, .. }
            | ParseError::UnexpectedToken { col, .. }
            | ParseError::TrailingInput { col, .. } => *col,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::UnexpectedChar { ch, line, col } => {
                write!(f, "{line}:{col}: unexpected character `{ch}`")
            }
            ParseError::MissingDigits { line, col } => {
                write!(f, "{line}:{col}: expected digits after `p`")
            }
            ParseError::VarBudget { index, budget, line, col } => {
                write!(
                    f,
                    "{line}:{col}: variable index {index} exceeds the budget (indices must be < {budget})"
                )
            }
            ParseError::UnexpectedEnd { expected, line, col } => {
                write!(f, "{line}:{col}: input ended, expected {expected}")
            }
            ParseError::UnexpectedToken { expected, found, line, col } => {
                write!(f, "{line}:{col}: expected {expected}, found `{found}`")
            }
            ParseError::TrailingInput { found, line, col } => {
                write!(f, "{line}:{col}: trailing input starting at `{found}`")
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Surface tree before desugaring.
enum Surface {
    Var(u32),
    Not(Box<Surface>),
    And(Box<Surface>, Box<Surface>),
    Or(Box<Surface>, Box<Surface>),
    Imp(Box<Surface>, Box<Surface>),
    Iff(Box<Surface>, Box<Surface>),
    Diamond(Box<Surface>),
    Boxed(Box<Surface>),
    Forall(Box<Surface>),
    Exists(Box<Surface>),
}

fn desugar(s: &Surface) -> Formula {
    match s {
        Surface::Var(i) => Formula::var(*i),
        Surface::Not(g) => Formula::not(desugar(g)),
        Surface::And(l, r) => Formula::and(desugar(l), desugar(r)),
        Surface::Or(l, r) => Formula::or(desugar(l), desugar(r)),
        Surface::Imp(l, r) => Formula::imp(desugar(l), desugar(r)),
        Surface::Iff(l, r) => Formula::iff(desugar(l), desugar(r)),
        Surface::Diamond(g) => Formula::diamond(desugar(g)),
        Surface::Boxed(g) => Formula::bx(desugar(g)),
        Surface::Forall(g) => Formula::forall(desugar(g)),
        Surface::Exists(g) => Formula::exists(desugar(g)),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Var(u32),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Diamond,
    BoxT,
    ForallT,
    ExistsT,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Var(i) => {
                let mut s = String::from("p");
                s.push_str(&alloc::format!("{i}"));
                s
            }
            Tok::Tilde => String::from("~"),
            Tok::Amp => String::from("&"),
            Tok::Pipe => String::from("|"),
            Tok::Arrow => String::from("->"),
            Tok::DArrow => String::from("<->"),
            Tok::Diamond => String::from("<>"),
            Tok::BoxT => String::from("[]"),
            Tok::ForallT => String::from("A"),
            Tok::ExistsT => String::from("E"),
            Tok::LParen => String::from("("),
            Tok::RParen => String::from(")"),
        }
    }
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { chars: src.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn expect_next(&mut self, want: char, after: char) -> Result<(), ParseError> {
        let (line, col) = (self.line, self.col);
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(ParseError::UnexpectedChar { ch: c, line, col }),
            None => Err(ParseError::UnexpectedEnd {
                expected: match after {
                    '[' => "`]`",
                    '-' => "`>`",
                    _ => "`>` or `->`",
                },
                line,
                col,
            }),
        }
    }

    /// Tokenize the whole input; also returns the position just past the end,
    /// which "unexpected end" errors point at.
    fn lex(mut self, budget: u32) -> Result<(Vec<(Tok, u32, u32)>, (u32, u32)), ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.bump() else { break };
            let tok = match c {
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                'A' => Tok::ForallT,
                'E' => Tok::ExistsT,
                '[' => {
                    self.expect_next(']', '[')?;
                    Tok::BoxT
                }
                '-' => {
                    self.expect_next('>', '-')?;
                    Tok::Arrow
                }
                '<' => match self.chars.peek() {
                    Some('>') => {
                        self.bump();
                        Tok::Diamond
                    }
                    Some('-') => {
                        self.bump();
                        self.expect_next('>', '-')?;
                        Tok::DArrow
                    }
                    Some(&c2) => {
                        return Err(ParseError::UnexpectedChar {
                            ch: c2,
                            line: self.line,
                            col: self.col,
                        })
                    }
                    None => {
                        return Err(ParseError::UnexpectedEnd {
                            expected: "`>` or `->`",
                            line: self.line,
                            col: self.col,
                        })
                    }
                },
                'p' => {
                    let mut digits = 0u64;
                    let mut any = false;
                    while matches!(self.chars.peek(), Some(d) if d.is_ascii_digit()) {
                        let d = self.bump().unwrap();
                        any = true;
                        digits = digits.saturating_mul(10).saturating_add((d as u8 - b'0') as u64);
                    }
                    if !any {
                        return Err(ParseError::MissingDigits { line, col });
                    }
                    if digits >= budget as u64 {
                        return Err(ParseError::VarBudget { index: digits, budget, line, col });
                    }
                    Tok::Var(digits as u32)
                }
                other => return Err(ParseError::UnexpectedChar { ch: other, line, col }),
            };
            out.push((tok, line, col));
        }
        Ok((out, (self.line, self.col)))
    }
}

struct Parser {
    toks: Vec<(Tok, u32, u32)>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (u32, u32) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn operand_error(&self) -> ParseError {
        let (line, col) = self.here();
        match self.toks.get(self.pos) {
            None => ParseError::UnexpectedEnd { expected: "a formula", line, col },
            Some((t, _, _)) => ParseError::UnexpectedToken {
                expected: "a formula",
                found: t.text(),
                line,
                col,
            },
        }
    }

    fn iff(&mut self) -> Result<Surface, ParseError> {
        let left = self.imp()?;
        if matches!(self.peek(), Some(Tok::DArrow)) {
            self.bump();
            let right = self.iff()?;
            Ok(Surface::Iff(Box::new(left), Box::new(right)))
        } else {
            Ok(left)
        }
    }

    fn imp(&mut self) -> Result<Surface, ParseError> {
        let left = self.or()?;
        if matches!(self.peek(), Some(Tok::Arrow)) {
            self.bump();
            let right = self.imp()?;
            Ok(Surface::Imp(Box::new(left), Box::new(right)))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Surface, ParseError> {
        let mut left = self.and()?;
        while matches!(self.peek(), Some(Tok::Pipe)) {
            self.bump();
            let right = self.and()?;
            left = Surface::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Surface, ParseError> {
        let mut left = self.unary()?;
        while matches!(self.peek(), Some(Tok::Amp)) {
            self.bump();
            let right = self.unary()?;
            left = Surface::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Surface, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.bump();
                Ok(Surface::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Diamond) => {
                self.bump();
                Ok(Surface::Diamond(Box::new(self.unary()?)))
            }
            Some(Tok::BoxT) => {
                self.bump();
                Ok(Surface::Boxed(Box::new(self.unary()?)))
            }
            Some(Tok::ForallT) => {
                self.bump();
                Ok(Surface::Forall(Box::new(self.unary()?)))
            }
            Some(Tok::ExistsT) => {
                self.bump();
                Ok(Surface::Exists(Box::new(self.unary()?)))
            }
            Some(Tok::Var(i)) => {
                let i = *i;
                self.bump();
                Ok(Surface::Var(i))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.iff()?;
                if matches!(self.peek(), Some(Tok::RParen)) {
                    self.bump();
                    Ok(inner)
                } else {
                    let (line, col) = self.here();
                    match self.toks.get(self.pos) {
                        None => Err(ParseError::UnexpectedEnd { expected: "`)`", line, col }),
                        Some((t, _, _)) => Err(ParseError::UnexpectedToken {
                            expected: "`)`",
                            found: t.text(),
                            line,
                            col,
                        }),
                    }
                }
            }
            _ => Err(self.operand_error()),
        }
    }
}

/// Parse with the default variable budget of 64.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    parse_with_budget(src, DEFAULT_VAR_BUDGET)
}

/// Parse, rejecting any variable index `>= budget`.
pub fn parse_with_budget(src: &str, budget: u32) -> Result<Formula, ParseError> {
    let (toks, end) = Lexer::new(src).lex(budget)?;
    let mut p = Parser { toks, pos: 0, end };
    let surface = p.iff()?;
    if p.pos < p.toks.len() {
        let (line, col) = p.here();
        let found = p.toks[p.pos].0.text();
        return Err(ParseError::TrailingInput { found, line, col });
    }
    Ok(desugar(&surface))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every primitive embeds into the surface language; desugaring that
    /// embedding must reproduce the tree (desugaring is idempotent).
    fn embed(f: &Formula) -> Surface {
        match f {
            Formula::Var(i) => Surface::Var(*i),
            Formula::And(l, r) => Surface::And(Box::new(embed(l)), Box::new(embed(r))),
            Formula::Not(g) => Surface::Not(Box::new(embed(g))),
            Formula::Diamond(g) => Surface::Diamond(Box::new(embed(g))),
            Formula::Forall(g) => Surface::Forall(Box::new(embed(g))),
        }
    }

    #[test]
    fn desugar_is_idempotent() {
        let samples = [
            "p0 & ~p1",
            "<>p0 -> []<>p0",
            "A([]p1 | []~p1) -> Ap1 | A~p1",
            "p0 <-> (p1 | p2)",
            "E<>p3",
        ];
        for src in samples {
            let f = parse(src).unwrap();
            assert_eq!(desugar(&embed(&f)), f, "{src}");
        }
    }

    #[test]
    fn whitespace_and_newlines_are_insignificant() {
        assert_eq!(
            parse("  <> p0\n\t->\n[] <> p0 ").unwrap(),
            parse("<>p0 -> []<>p0").unwrap()
        );
    }

    #[test]
    fn missing_digits_after_p() {
        let err = parse("p & p0").unwrap_err();
        assert!(matches!(err, ParseError::MissingDigits { .. }));
        assert_eq!((err.line(), err.column()), (1, 1));
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = parse("").unwrap_err();
        assert!(matches!(err, ParseError::UnexpectedEnd { .. }));
        let err = parse("   ").unwrap_err();
        assert!(matches!(err, ParseError::UnexpectedEnd { .. }));
    }

    #[test]
    fn huge_variable_index_reports_budget() {
        let err = parse("p99999999999999999999").unwrap_err();
        assert!(matches!(err, ParseError::VarBudget { .. }));
    }
}
