//! Parsers for the three input languages: ASP programs (`.lp`), conditional
//! knowledge bases (`.kb`) and query formulas.
//!
//! One lexer serves all three. Tokens that belong to ASP-Core-2 but fall
//! outside the supported subset (weak constraints, directives, intervals,
//! arithmetic, ...) are lexed anyway so the program parser can report them as
//! [`ParseErrorKind::UnsupportedConstruct`] instead of a bare syntax error.

use std::fmt::{self, Display, Formatter};

use thiserror::Error;

use crate::model::{
    validate_formula, Atom, AtomPattern, BodyElement, CmpOp, ConditionalKB, Constant, Formula, Head, ModelError, Program, RankedConditional, Rule, Term,
    WeightedConditional,
};

/***** ERRORS *****/
/// Location of a token: 1-based line and columns, `start_col <= end_col`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub file: Option<String>,
    pub line: usize,
    pub start_col: usize,
    pub end_col: usize,
}

impl Display for SourceSpan {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let file = self.file.as_deref().unwrap_or("<input>");
        write!(f, "{file}:{}:{}", self.line, self.start_col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnsafeVariable { rule: String, var: String },
    UnsupportedConstruct(String),
    MixedStrategyForSubject(Atom),
    TypInConsequent,
    NestedTypicality,
    ForbiddenInsideTyp,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {}", describe(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(msg) => format!("syntax error: {msg}"),
        ParseErrorKind::UnsafeVariable { rule, var } => format!("unsafe variable {var} in rule `{rule}`"),
        ParseErrorKind::UnsupportedConstruct(what) => format!("unsupported construct: {what}"),
        ParseErrorKind::MixedStrategyForSubject(a) => format!("subject {a} has both weighted and ranked conditionals"),
        ParseErrorKind::TypInConsequent => "T(...) is not allowed in the consequent of a conditional".into(),
        ParseErrorKind::NestedTypicality => "typicality operator cannot be nested".into(),
        ParseErrorKind::ForbiddenInsideTyp => "only atoms, &, | and ~ are allowed inside T(...)".into(),
    }
}

/***** LEXER *****/
#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    If,
    Eq,
    Ne,
    Arrow,
    Amp,
    Bar,
    Tilde,
    Colon,
    At,
    Plus,
    Minus,
    HashTrue,
    HashFalse,
    /// Recognised ASP-Core-2 syntax outside the supported subset.
    Unsupported(&'static str),
    Eof,
}

impl Display for Tok {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Ne => f.write_str("`!=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::At => f.write_str("`@`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::HashTrue => f.write_str("`#true`"),
            Tok::HashFalse => f.write_str("`#false`"),
            Tok::Unsupported(s) => write!(f, "{s}"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str, file: Option<&str>) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let span =
        |line: usize, start: usize, len: usize| SourceSpan { file: file.map(str::to_owned), line, start_col: start, end_col: start + len.saturating_sub(1) };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            i = start;
            let len = word.len();
            if c == '_' {
                (Tok::Unsupported("anonymous variable `_`"), len)
            } else if c.is_ascii_uppercase() {
                (Tok::Var(word), len)
            } else {
                (Tok::Ident(word), len)
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            i = start;
            let value = digits
                .parse::<i64>()
                .map_err(|_| ParseError { kind: ParseErrorKind::Syntax(format!("integer `{digits}` out of range")), span: span(line, col, digits.len()) })?;
            (Tok::Int(value), digits.len())
        } else if c == '#' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[start..j].iter().collect();
            match word.as_str() {
                "true" => (Tok::HashTrue, j - i),
                "false" => (Tok::HashFalse, j - i),
                _ => (Tok::Unsupported("directive or aggregate `#...`"), j - i),
            }
        } else {
            match (c, peek) {
                (':', Some('-')) => (Tok::If, 2),
                (':', Some('~')) => (Tok::Unsupported("weak constraint `:~`"), 2),
                ('!', Some('=')) => (Tok::Ne, 2),
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('.', Some('.')) => (Tok::Unsupported("interval `..`"), 2),
                ('<', Some('=')) | ('>', Some('=')) => (Tok::Unsupported("comparison other than = and !="), 2),
                ('<', _) | ('>', _) => (Tok::Unsupported("comparison other than = and !="), 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                (',', _) => (Tok::Comma, 1),
                (';', _) => (Tok::Semi, 1),
                ('.', _) => (Tok::Dot, 1),
                ('=', _) => (Tok::Eq, 1),
                ('&', _) => (Tok::Amp, 1),
                ('|', _) => (Tok::Bar, 1),
                ('~', _) => (Tok::Tilde, 1),
                (':', _) => (Tok::Colon, 1),
                ('@', _) => (Tok::At, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) | ('/', _) | ('\\', _) => (Tok::Unsupported("arithmetic"), 1),
                ('"', _) => (Tok::Unsupported("string constant"), 1),
                ('[', _) | (']', _) => (Tok::Unsupported("weak constraint weight `[w@l]`"), 1),
                _ => {
                    return Err(ParseError { kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")), span: span(line, col, 1) });
                },
            }
        };
        out.push(Token { tok, span: span(line, col, len) });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, span: span(line, col, 1) });
    Ok(out)
}

/***** PARSER *****/
struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str, file: Option<&str>) -> Result<Self, ParseError> {
        Ok(Self { toks: lex(text, file)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Error for the current token. In program mode, recognised-but-unsupported
    /// syntax is reported as such.
    fn unexpected(&self, expected: &str) -> ParseError {
        let span = self.span();
        match self.peek() {
            Tok::Unsupported(what) => ParseError { kind: ParseErrorKind::UnsupportedConstruct((*what).into()), span },
            t => ParseError { kind: ParseErrorKind::Syntax(format!("expected {expected}, found {t}")), span },
        }
    }

    fn expect(&mut self, t: &Tok, expected: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn unsupported_in_program(&self) -> ParseError {
        let span = self.span();
        let what = match self.peek() {
            Tok::Unsupported(w) => (*w).to_string(),
            Tok::Bar => "disjunctive head `|`".into(),
            Tok::Colon => "conditional literal `:`".into(),
            Tok::At => "priority `@`".into(),
            Tok::Plus | Tok::Minus => "arithmetic".into(),
            t => return ParseError { kind: ParseErrorKind::Syntax(format!("unexpected {t}")), span },
        };
        ParseError { kind: ParseErrorKind::UnsupportedConstruct(what), span }
    }

    fn is_program_unsupported(&self) -> bool {
        matches!(self.peek(), Tok::Unsupported(_) | Tok::Bar | Tok::Colon | Tok::At | Tok::Plus | Tok::Minus)
    }

    fn expect_program(&mut self, t: &Tok, expected: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else if self.is_program_unsupported() {
            Err(self.unsupported_in_program())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        let span = self.span();
        match self.bump().tok {
            Tok::Int(i) => u32::try_from(i).map_err(|_| ParseError { kind: ParseErrorKind::Syntax(format!("bound {i} too large")), span }),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a natural number"))
            },
        }
    }

    /***** Programs *****/
    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                if self.at(&Tok::LParen) {
                    return Err(ParseError { kind: ParseErrorKind::UnsupportedConstruct("function symbol".into()), span: self.span() });
                }
                Ok(Term::Constant(Constant::Sym(s)))
            },
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Variable(v))
            },
            Tok::Int(i) => {
                self.bump();
                Ok(Term::Constant(Constant::Int(i)))
            },
            _ if self.is_program_unsupported() => Err(self.unsupported_in_program()),
            _ => Err(self.unexpected("a constant or variable")),
        }
    }

    /// `pred` or `pred(t1, ..., tn)`; the predicate token has been peeked.
    fn atom_pattern(&mut self) -> Result<AtomPattern, ParseError> {
        let name = match self.peek().clone() {
            Tok::Ident(s) if s != "not" => {
                self.bump();
                s
            },
            Tok::Var(v) => {
                return Err(ParseError { kind: ParseErrorKind::Syntax(format!("variable `{v}` used as an atom")), span: self.span() });
            },
            _ if self.is_program_unsupported() => return Err(self.unsupported_in_program()),
            _ => return Err(self.unexpected("an atom")),
        };
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect_program(&Tok::RParen, "`,` or `)`")?;
                break;
            }
        }
        Ok(AtomPattern::new(name, args))
    }

    /// `{ a1; ...; an }`, the opening brace not yet consumed.
    fn atom_set(&mut self) -> Result<Vec<AtomPattern>, ParseError> {
        self.expect_program(&Tok::LBrace, "`{`")?;
        let mut atoms = vec![self.atom_pattern()?];
        loop {
            if self.eat(&Tok::Semi) {
                atoms.push(self.atom_pattern()?);
                continue;
            }
            if self.at(&Tok::Comma) {
                return Err(ParseError { kind: ParseErrorKind::UnsupportedConstruct("`,` inside a set; use `;`".into()), span: self.span() });
            }
            self.expect_program(&Tok::RBrace, "`;` or `}`")?;
            return Ok(atoms);
        }
    }

    fn head(&mut self) -> Result<Head, ParseError> {
        match self.peek() {
            Tok::Int(_) if self.peek_at(1) == &Tok::LBrace => {
                let lower = self.nat()?;
                self.choice_rest(Some(lower))
            },
            Tok::LBrace => self.choice_rest(None),
            _ => {
                let a = self.atom_pattern()?;
                if self.at(&Tok::Bar) || self.at(&Tok::Semi) {
                    return Err(ParseError { kind: ParseErrorKind::UnsupportedConstruct("disjunctive head".into()), span: self.span() });
                }
                Ok(Head::Normal(a))
            },
        }
    }

    fn choice_rest(&mut self, lower: Option<u32>) -> Result<Head, ParseError> {
        let span = self.span();
        let atoms = self.atom_set()?;
        let upper = if let Tok::Int(_) = self.peek() { Some(self.nat()?) } else { None };
        if let (Some(l), Some(u)) = (lower, upper) {
            if l > u {
                return Err(ParseError { kind: ParseErrorKind::Syntax(format!("choice bounds {l} > {u}")), span });
            }
        }
        Ok(Head::Choice { lower, atoms, upper })
    }

    fn body_element(&mut self) -> Result<BodyElement, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "not" => {
                self.bump();
                if matches!(self.peek(), Tok::Int(_) | Tok::LBrace) {
                    return Err(ParseError { kind: ParseErrorKind::UnsupportedConstruct("negated cardinality".into()), span: self.span() });
                }
                Ok(BodyElement::Negated(self.atom_pattern()?))
            },
            Tok::Int(_) if self.peek_at(1) == &Tok::LBrace => {
                let lower = self.nat()?;
                let atoms = self.atom_set()?;
                if let Tok::Int(_) = self.peek() {
                    return Err(ParseError { kind: ParseErrorKind::UnsupportedConstruct("upper bound on a body cardinality".into()), span: self.span() });
                }
                Ok(BodyElement::CardinalityLower { lower, atoms })
            },
            Tok::LBrace => Err(ParseError { kind: ParseErrorKind::Syntax("body cardinality needs a lower bound".into()), span: self.span() }),
            Tok::Var(_) | Tok::Int(_) => {
                let left = self.term()?;
                self.comparison_rest(left)
            },
            Tok::Ident(_) if matches!(self.peek_at(1), Tok::Eq | Tok::Ne | Tok::Unsupported(_)) => {
                let left = self.term()?;
                self.comparison_rest(left)
            },
            _ => Ok(BodyElement::Positive(self.atom_pattern()?)),
        }
    }

    fn comparison_rest(&mut self, left: Term) -> Result<BodyElement, ParseError> {
        let op = match self.peek() {
            Tok::Eq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            _ if self.is_program_unsupported() => return Err(self.unsupported_in_program()),
            _ => {
                return Err(match &left {
                    Term::Variable(v) => {
                        ParseError { kind: ParseErrorKind::Syntax(format!("variable `{v}` used as an atom")), span: self.toks[self.pos - 1].span.clone() }
                    },
                    _ => self.unexpected("`=` or `!=`"),
                });
            },
        };
        self.bump();
        let right = self.term()?;
        Ok(BodyElement::Comparison { left, op, right })
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let start = self.span();
        let head = if self.at(&Tok::If) { Head::Empty } else { self.head()? };
        let mut body = Vec::new();
        if self.eat(&Tok::If) {
            if !self.at(&Tok::Dot) {
                loop {
                    body.push(self.body_element()?);
                    if self.eat(&Tok::Comma) {
                        continue;
                    }
                    break;
                }
            }
        } else if matches!(head, Head::Empty) {
            return Err(self.unexpected("a rule"));
        }
        self.expect_program(&Tok::Dot, "`,` or `.`")?;
        let rule = Rule { head, body };
        if let Some(var) = rule.unsafe_variable() {
            return Err(ParseError { kind: ParseErrorKind::UnsafeVariable { rule: rule.to_string(), var: var.to_string() }, span: start });
        }
        Ok(rule)
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut rules = Vec::new();
        while !self.at(&Tok::Eof) {
            rules.push(self.rule()?);
        }
        Ok(Program { rules })
    }

    /***** Formulas *****/
    fn ground_atom(&mut self) -> Result<Atom, ParseError> {
        let name = match self.peek().clone() {
            Tok::Ident(s) if s != "not" => {
                self.bump();
                s
            },
            Tok::Var(v) => {
                return Err(ParseError { kind: ParseErrorKind::Syntax(format!("variables are not allowed here: `{v}`")), span: self.span() });
            },
            _ => return Err(self.unexpected("a ground atom")),
        };
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                match self.peek().clone() {
                    Tok::Ident(s) => {
                        self.bump();
                        args.push(Constant::Sym(s));
                    },
                    Tok::Int(i) => {
                        self.bump();
                        args.push(Constant::Int(i));
                    },
                    Tok::Var(v) => {
                        return Err(ParseError { kind: ParseErrorKind::Syntax(format!("variables are not allowed here: `{v}`")), span: self.span() });
                    },
                    _ => return Err(self.unexpected("a constant")),
                }
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(&Tok::RParen, "`,` or `)`")?;
                break;
            }
        }
        Ok(Atom::new(name, args))
    }

    /// implication := disjunction [ "->" implication ]
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            },
            Tok::Ident(s) if s == "not" => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            },
            Tok::LParen => {
                self.bump();
                let f = self.implication()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(f)
            },
            Tok::HashTrue => {
                self.bump();
                Ok(Formula::Top)
            },
            Tok::HashFalse => {
                self.bump();
                Ok(Formula::Bottom)
            },
            Tok::Var(v) if v == "T" && self.peek_at(1) == &Tok::LParen => {
                self.bump();
                self.bump();
                let f = self.implication()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Formula::typ(f))
            },
            _ => Ok(Formula::Atom(self.ground_atom()?)),
        }
    }

    fn formula_checked(&mut self) -> Result<Formula, ParseError> {
        let span = self.span();
        let f = self.implication()?;
        validate_formula(&f).map_err(|e| ParseError {
            kind: match e {
                ModelError::NestedTypicality(_) => ParseErrorKind::NestedTypicality,
                _ => ParseErrorKind::ForbiddenInsideTyp,
            },
            span,
        })?;
        Ok(f)
    }

    /***** Knowledge bases *****/
    fn kb(&mut self) -> Result<ConditionalKB, ParseError> {
        let mut weighted = Vec::new();
        let mut ranked = Vec::new();
        while !self.at(&Tok::Eof) {
            let line_span = self.span();
            match self.peek() {
                Tok::Var(v) if v == "T" => {
                    self.bump();
                },
                _ => return Err(self.unexpected("`T(`")),
            }
            self.expect(&Tok::LParen, "`(`")?;
            let subject = self.ground_atom()?;
            self.expect(&Tok::RParen, "`)` (the subject of a conditional is a single atom)")?;
            self.expect(&Tok::Arrow, "`->`")?;
            let cspan = self.span();
            let consequent = self.implication()?;
            if consequent.contains_typ() {
                return Err(ParseError { kind: ParseErrorKind::TypInConsequent, span: cspan });
            }
            if self.eat(&Tok::Colon) {
                let negative = if self.eat(&Tok::Minus) {
                    true
                } else {
                    self.eat(&Tok::Plus);
                    false
                };
                let magnitude = match self.bump().tok {
                    Tok::Int(i) => i,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("an integer weight"));
                    },
                };
                let weight = if negative { -magnitude } else { magnitude };
                if ranked.iter().any(|c: &RankedConditional| c.subject == subject) {
                    return Err(ParseError { kind: ParseErrorKind::MixedStrategyForSubject(subject), span: line_span });
                }
                weighted.push(WeightedConditional { subject, consequent, weight });
            } else if self.eat(&Tok::At) {
                let rank = self.nat()?;
                if weighted.iter().any(|c: &WeightedConditional| c.subject == subject) {
                    return Err(ParseError { kind: ParseErrorKind::MixedStrategyForSubject(subject), span: line_span });
                }
                ranked.push(RankedConditional { subject, consequent, rank });
            } else {
                return Err(self.unexpected("`:` weight or `@` rank"));
            }
            self.expect(&Tok::Dot, "`.`")?;
        }
        ConditionalKB::new(weighted, ranked).map_err(|e| ParseError {
            kind: match e {
                ModelError::MixedStrategyForSubject(a) => ParseErrorKind::MixedStrategyForSubject(a),
                _ => ParseErrorKind::TypInConsequent,
            },
            span: self.span(),
        })
    }
}

/// Parses an ASP program. Every rule is checked for safety.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_program_named(text, None)
}

pub fn parse_program_named(text: &str, file: Option<&str>) -> Result<Program, ParseError> {
    Parser::new(text, file)?.program()
}

/// Parses a conditional knowledge base: one `T(atom) -> formula : w.` or
/// `T(atom) -> formula @ l.` per conditional.
pub fn parse_kb(text: &str) -> Result<ConditionalKB, ParseError> {
    parse_kb_named(text, None)
}

pub fn parse_kb_named(text: &str, file: Option<&str>) -> Result<ConditionalKB, ParseError> {
    Parser::new(text, file)?.kb()
}

/// Parses a query. The result is validated; a query is expected to be an
/// implication `A -> B` at top level, which is checked by the entailment
/// checker rather than here.
pub fn parse_query(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, None)?;
    let f = p.formula_checked()?;
    if !p.at(&Tok::Eof) {
        return Err(p.unexpected("end of query"));
    }
    Ok(f)
}

/// Parses a single formula (no implication-shape requirement).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_query(text)
}
