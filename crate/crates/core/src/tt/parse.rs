//! Line-oriented parser for judgments and theory declarations.
//!
//! ```text
//! judgment := CTX "|-" TERM ":" TYPE | CTX "|-" TERM "=" TERM ":" TYPE
//!           | CTX "|-" TYPE "type" | CTX "|-" TYPE "=" TYPE "type" | CTX "ctx"
//! CTX      := ε | x ":" TYPE ("," x ":" TYPE)*
//! TYPE     := PROD ("+" TYPE)?          PROD := ATOM ("*" PROD)?
//! ATOM     := "Unit" | "Nat" | "Id" "(" TYPE "," TERM "," TERM ")" | "(" TYPE ")" | NAME
//! TERM     := ("succ" | "fst" | "snd" | "inl" | "inr" | "refl") TERM
//!           | "*" | NUMERAL | "<" TERM "," TERM ">" | "(" TERM ")" | x | f "(" TERM ")"
//!           | "natrec" "(" TERM "," BIND "," TERM ")"
//!           | "case" "(" TERM "," BIND "," BIND ")"
//! BIND     := ("\" | "λ")? x "." TERM
//! decl     := "type" A | "tyeq" A "=" TYPE | "const" c ":" TYPE ("->" TYPE)?
//!           | "eq" CTX "|-" TERM "=" TERM ":" TYPE
//! ```
//!
//! A numeral `n` abbreviates `succ^n 0`. `#` starts a comment.

use std::collections::BTreeSet;

use super::syntax::{Context, Expr, Judgment, Type};
use super::theory::Decl;
use super::TtError;

const KEYWORDS: &[&str] = &[
    "Unit", "Nat", "Id", "succ", "natrec", "fst", "snd", "inl", "inr", "case", "refl", "type", "ctx", "const",
    "eq", "tyeq",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: &[&str] = &["|-", "->", ":", "=", ",", "(", ")", "<", ">", "*", "+", ".", "\\", "λ"];

fn lex(text: &str, line: usize) -> Result<Vec<Token>, TtError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, column });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<u64>().map_err(|_| TtError::Syntax {
                line,
                column,
                expected: vec!["a numeral below 2^64".into()],
            })?;
            out.push(Token { tok: Tok::Num(n), line, column });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), line, column });
                i += s.chars().count();
            }
            None => {
                return Err(TtError::Syntax { line, column, expected: vec!["a token".into()] });
            }
        }
    }
    out.push(Token { tok: Tok::End, line, column: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    furthest: usize,
    expected: BTreeSet<String>,
}

type P<T> = Result<T, ()>;

impl Parser {
    fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, pos: 0, furthest: 0, expected: BTreeSet::new() }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn fail<T>(&mut self, what: &str) -> P<T> {
        if self.pos > self.furthest {
            self.furthest = self.pos;
            self.expected.clear();
        }
        if self.pos == self.furthest {
            self.expected.insert(what.to_string());
        }
        Err(())
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        if *self.peek() == Tok::Sym(s) {
            self.pos += 1;
            true
        } else {
            let _ = self.fail::<()>(&format!("`{s}`"));
            false
        }
    }

    fn sym(&mut self, s: &'static str) -> P<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(())
        }
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(x) if x == kw) {
            self.pos += 1;
            true
        } else {
            let _ = self.fail::<()>(&format!("`{kw}`"));
            false
        }
    }

    fn kw(&mut self, kw: &str) -> P<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(())
        }
    }

    fn ident(&mut self) -> P<String> {
        match self.peek().clone() {
            Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) => {
                self.pos += 1;
                Ok(x)
            }
            _ => self.fail("an identifier"),
        }
    }

    fn end(&mut self) -> P<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail("end of line")
        }
    }

    fn error(&self) -> TtError {
        let t = &self.toks[self.furthest.min(self.toks.len() - 1)];
        TtError::Syntax { line: t.line, column: t.column, expected: self.expected.iter().cloned().collect() }
    }

    fn ty(&mut self) -> P<Type> {
        let a = self.prod_ty()?;
        if self.eat_sym("+") {
            let b = self.ty()?;
            return Ok(Type::sum(a, b));
        }
        Ok(a)
    }

    fn prod_ty(&mut self) -> P<Type> {
        let a = self.atom_ty()?;
        if self.eat_sym("*") {
            let b = self.prod_ty()?;
            return Ok(Type::prod(a, b));
        }
        Ok(a)
    }

    fn atom_ty(&mut self) -> P<Type> {
        if self.eat_kw("Unit") {
            return Ok(Type::Unit);
        }
        if self.eat_kw("Nat") {
            return Ok(Type::Nat);
        }
        if self.eat_kw("Id") {
            self.sym("(")?;
            let a = self.ty()?;
            self.sym(",")?;
            let x = self.term()?;
            self.sym(",")?;
            let y = self.term()?;
            self.sym(")")?;
            return Ok(Type::id(a, x, y));
        }
        if self.eat_sym("(") {
            let a = self.ty()?;
            self.sym(")")?;
            return Ok(a);
        }
        match self.ident() {
            Ok(n) => Ok(Type::Named(n)),
            Err(()) => self.fail("a type"),
        }
    }

    fn binder(&mut self) -> P<(String, Expr)> {
        if !self.eat_sym("\\") {
            self.eat_sym("λ");
        }
        let x = self.ident()?;
        self.sym(".")?;
        let body = self.term()?;
        Ok((x, body))
    }

    fn term(&mut self) -> P<Expr> {
        type Former = fn(Box<Expr>) -> Expr;
        let prefixes: [(&str, Former); 6] = [
            ("succ", Expr::Succ),
            ("fst", Expr::Fst),
            ("snd", Expr::Snd),
            ("inl", Expr::Inl),
            ("inr", Expr::Inr),
            ("refl", Expr::Refl),
        ];
        // Prefix chains are collected iteratively so long `succ` towers parse.
        let mut formers: Vec<Former> = Vec::new();
        'outer: loop {
            for (kw, former) in prefixes {
                if self.eat_kw(kw) {
                    formers.push(former);
                    continue 'outer;
                }
            }
            break;
        }
        let mut e = self.atom_term()?;
        while let Some(former) = formers.pop() {
            e = former(Box::new(e));
        }
        Ok(e)
    }

    fn atom_term(&mut self) -> P<Expr> {
        if self.eat_sym("*") {
            return Ok(Expr::Star);
        }
        if let Tok::Num(n) = *self.peek() {
            self.pos += 1;
            return Ok(Expr::numeral(n));
        }
        if self.eat_sym("<") {
            let a = self.term()?;
            self.sym(",")?;
            let b = self.term()?;
            self.sym(">")?;
            return Ok(Expr::pair(a, b));
        }
        if self.eat_sym("(") {
            let a = self.term()?;
            self.sym(")")?;
            return Ok(a);
        }
        if self.eat_kw("natrec") {
            self.sym("(")?;
            let base = self.term()?;
            self.sym(",")?;
            let (var, step) = self.binder()?;
            self.sym(",")?;
            let target = self.term()?;
            self.sym(")")?;
            return Ok(Expr::NatRec { base: Box::new(base), var, step: Box::new(step), target: Box::new(target) });
        }
        if self.eat_kw("case") {
            self.sym("(")?;
            let scrut = self.term()?;
            self.sym(",")?;
            let (left_var, left) = self.binder()?;
            self.sym(",")?;
            let (right_var, right) = self.binder()?;
            self.sym(")")?;
            return Ok(Expr::Case {
                scrut: Box::new(scrut),
                left_var,
                left: Box::new(left),
                right_var,
                right: Box::new(right),
            });
        }
        match self.ident() {
            Ok(x) => {
                if self.eat_sym("(") {
                    let a = self.term()?;
                    self.sym(")")?;
                    return Ok(Expr::App(x, Box::new(a)));
                }
                Ok(Expr::Var(x))
            }
            Err(()) => self.fail("a term"),
        }
    }

    /// Context entries up to (not including) `|-` or `ctx`.
    fn context(&mut self) -> P<Context> {
        let mut entries = Vec::new();
        if matches!(self.peek(), Tok::Sym("|-")) || matches!(self.peek(), Tok::Ident(x) if x == "ctx") {
            return Ok(Context::new(entries));
        }
        loop {
            let x = self.ident()?;
            self.sym(":")?;
            let t = self.ty()?;
            entries.push((x, t));
            if !self.eat_sym(",") {
                break;
            }
        }
        Ok(Context::new(entries))
    }

    fn judgment(&mut self) -> P<Judgment> {
        let ctx = self.context()?;
        if self.eat_kw("ctx") {
            self.end()?;
            return Ok(Judgment::Ctx(ctx));
        }
        self.sym("|-")?;
        let start = self.pos;
        if let Ok(j) = self.term_judgment(&ctx) {
            return Ok(j);
        }
        self.pos = start;
        self.type_judgment(&ctx)
    }

    fn term_judgment(&mut self, ctx: &Context) -> P<Judgment> {
        let a = self.term()?;
        if self.eat_sym(":") {
            let t = self.ty()?;
            self.end()?;
            return Ok(Judgment::Term(ctx.clone(), a, t));
        }
        self.sym("=")?;
        let b = self.term()?;
        self.sym(":")?;
        let t = self.ty()?;
        self.end()?;
        Ok(Judgment::TermEq(ctx.clone(), a, b, t))
    }

    fn type_judgment(&mut self, ctx: &Context) -> P<Judgment> {
        let a = self.ty()?;
        if self.eat_kw("type") {
            self.end()?;
            return Ok(Judgment::Type(ctx.clone(), a));
        }
        self.sym("=")?;
        let b = self.ty()?;
        self.kw("type")?;
        self.end()?;
        Ok(Judgment::TypeEq(ctx.clone(), a, b))
    }

    fn decl(&mut self) -> P<Decl> {
        if self.eat_kw("type") {
            let a = self.ident()?;
            self.end()?;
            return Ok(Decl::Type(a));
        }
        if self.eat_kw("tyeq") {
            let a = self.ident()?;
            self.sym("=")?;
            let t = self.ty()?;
            self.end()?;
            return Ok(Decl::TyEq(a, t));
        }
        if self.eat_kw("const") {
            let c = self.ident()?;
            self.sym(":")?;
            let a = self.ty()?;
            if self.eat_sym("->") {
                let b = self.ty()?;
                self.end()?;
                return Ok(Decl::Fun(c, a, b));
            }
            self.end()?;
            return Ok(Decl::Const(c, a));
        }
        self.kw("eq")?;
        let ctx = self.context()?;
        self.sym("|-")?;
        let l = self.term()?;
        self.sym("=")?;
        let r = self.term()?;
        self.sym(":")?;
        let t = self.ty()?;
        self.end()?;
        Ok(Decl::Eq(ctx, l, r, t))
    }
}

fn run<T>(text: &str, line: usize, f: impl FnOnce(&mut Parser) -> P<T>) -> Result<T, TtError> {
    let mut p = Parser::new(lex(text, line)?);
    f(&mut p).map_err(|()| p.error())
}

/// Parse one judgment.
pub fn parse_judgment(text: &str) -> Result<Judgment, TtError> {
    run(text, 1, |p| p.judgment())
}

pub fn parse_type(text: &str) -> Result<Type, TtError> {
    run(text, 1, |p| {
        let t = p.ty()?;
        p.end()?;
        Ok(t)
    })
}

pub fn parse_term(text: &str) -> Result<Expr, TtError> {
    run(text, 1, |p| {
        let t = p.term()?;
        p.end()?;
        Ok(t)
    })
}

pub fn parse_decl(text: &str) -> Result<Decl, TtError> {
    run(text, 1, |p| p.decl())
}

/// One non-blank line of a document.
#[derive(Clone, Debug)]
pub enum Item {
    Decl(Decl),
    Judgment(Judgment),
}

/// A document: declarations and judgments, one per line, with line numbers.
pub fn parse_document(text: &str) -> Result<Vec<(usize, Item)>, TtError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = lex(raw, line)?;
        if toks.len() == 1 {
            continue;
        }
        let is_decl = matches!(&toks[0].tok, Tok::Ident(x) if ["type", "tyeq", "const", "eq"].contains(&x.as_str()));
        let mut p = Parser::new(toks);
        let item = if is_decl {
            p.decl().map(Item::Decl)
        } else {
            p.judgment().map(Item::Judgment)
        };
        out.push((line, item.map_err(|()| p.error())?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn judgments_parse() {
        let j = parse_judgment("|- <0, succ 0> : Nat * Nat").unwrap();
        assert_eq!(j.to_string(), "|- <0, 1> : Nat * Nat");
        let j = parse_judgment("x:Nat |- inl x : Nat + Unit").unwrap();
        assert!(matches!(j, Judgment::Term(_, Expr::Inl(_), Type::Sum(..))));
        assert!(matches!(parse_judgment("|- Nat * Unit type").unwrap(), Judgment::Type(..)));
        assert!(matches!(parse_judgment("|- Nat = Nat type").unwrap(), Judgment::TypeEq(..)));
        assert!(matches!(parse_judgment("x:Nat, y:Nat ctx").unwrap(), Judgment::Ctx(_)));
        let j = parse_judgment("|- natrec(0, \\p. succ succ p, 3) = 6 : Nat").unwrap();
        assert!(matches!(j, Judgment::TermEq(..)));
    }

    #[test]
    fn syntax_errors_report_position_and_expectations() {
        let TtError::Syntax { line, column, expected } = parse_judgment("|- 0 :").unwrap_err() else {
            panic!("expected a syntax error")
        };
        assert_eq!((line, column), (1, 7));
        assert!(expected.iter().any(|e| e == "a type"));
        assert!(parse_judgment("|- 0 : Nat Nat").is_err());
        assert!(parse_judgment("x |- 0 : Nat").is_err());
    }

    #[test]
    fn printing_reparses() {
        for text in [
            "x:Nat * Nat |- case(inl fst x, a. a, b. 0) : Nat",
            "|- refl 0 : Id(Nat, 0, natrec(0, p. p, 0))",
            "|- (Nat + Unit) * Nat = Nat type",
            "p:Nat |- f(succ p) : A",
        ] {
            let j = parse_judgment(text).unwrap();
            assert_eq!(parse_judgment(&j.to_string()).unwrap(), j);
        }
    }

    #[test]
    fn documents() {
        let doc = "type A  # a sort\nconst a : A\n\nconst f : A -> Nat\neq x:A |- f(x) = 0 : Nat\n|- f(a) : Nat\n";
        let items = parse_document(doc).unwrap();
        assert_eq!(items.len(), 5);
        assert_eq!(items[4].0, 6);
        let err = parse_document("type A\nconst : A\n").unwrap_err();
        assert!(matches!(err, TtError::Syntax { line: 2, column: 7, .. }));
    }
}
