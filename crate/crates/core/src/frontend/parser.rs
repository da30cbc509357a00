//! Recursive-descent parser for the accepted subset. Produces a small syntax
//! tree that `lower` turns into `ClassModel`s. Parsing stops at the first
//! construct outside the subset.

use super::lexer::{Token, TokenKind};
use super::model::is_primitive;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRef {
    pub name: String,
    pub dims: usize,
}

#[derive(Debug, Clone)]
pub struct ClassDecl {
    pub name: String,
    pub line: usize,
    pub column: usize,
    pub super_types: Vec<TypeRef>,
    pub fields: Vec<(TypeRef, String)>,
    pub methods: Vec<MethodDecl>,
    /// Distinct source lines holding tokens of this declaration.
    pub loc: usize,
}

#[derive(Debug, Clone)]
pub struct MethodDecl {
    pub name: String,
    pub is_constructor: bool,
    pub return_type: Option<TypeRef>,
    pub params: Vec<(TypeRef, String)>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub enum Stmt {
    Local {
        ty: TypeRef,
        name: String,
        init: Option<Expr>,
    },
    Assign {
        target: Expr,
        value: Expr,
    },
    Return(Option<Expr>),
    Expr(Expr),
}

#[derive(Debug, Clone)]
pub enum Expr {
    New { type_name: String, args: Vec<Expr> },
    This,
    Name(String),
    Literal,
    Field { target: Box<Expr>, name: String },
    Call {
        target: Option<Box<Expr>>,
        name: String,
        args: Vec<Expr>,
    },
}

const MODIFIERS: [&str; 5] = ["public", "private", "protected", "static", "final"];

const RESERVED: [&str; 38] = [
    "abstract", "assert", "break", "case", "catch", "class", "continue", "default", "do", "else",
    "enum", "extends", "finally", "for", "goto", "if", "implements", "import", "instanceof",
    "interface", "native", "new", "package", "return", "strictfp", "super", "switch",
    "synchronized", "this", "throw", "throws", "transient", "try", "volatile", "while", "true",
    "false", "null",
];

fn is_reserved(word: &str) -> bool {
    RESERVED.contains(&word) || MODIFIERS.contains(&word) || is_primitive(word)
}

pub struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    pub fn new(tokens: &'t [Token]) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        &self.tokens[(self.pos + offset).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> &Token {
        let tok = &self.tokens[self.pos.min(self.tokens.len() - 1)];
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        tok
    }

    fn error_at(tok: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        Self::error_at(tok, format!("unexpected {}, expected {}", tok, expected))
    }

    fn expect_punct(&mut self, p: &str) -> PResult<()> {
        if self.peek().is_punct(p) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", p)))
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<String> {
        let tok = self.peek();
        if tok.kind == TokenKind::Ident && !is_reserved(&tok.text) {
            let text = tok.text.clone();
            self.bump();
            Ok(text)
        } else {
            Err(self.unexpected(what))
        }
    }

    /// Rejects tokens that introduce constructs the subset never accepts,
    /// with a message naming the construct.
    fn reject_unsupported(&self) -> PResult<()> {
        let tok = self.peek();
        let construct = match tok.text.as_str() {
            "@" if tok.kind == TokenKind::Punct => "annotations",
            "->" if tok.kind == TokenKind::Punct => "lambda expressions",
            "::" if tok.kind == TokenKind::Punct => "method references",
            "package" | "import" => "package and import declarations",
            "interface" | "enum" => "interface and enum declarations",
            "abstract" | "native" | "synchronized" | "transient" | "volatile" | "strictfp" => {
                "this modifier"
            }
            "if" | "else" | "for" | "while" | "do" | "switch" | "try" | "throw" | "break"
            | "continue" | "assert" => "control-flow statements",
            "super" => "`super` references",
            "throws" => "`throws` clauses",
            _ => return Ok(()),
        };
        if tok.kind == TokenKind::Ident || tok.kind == TokenKind::Punct {
            Err(Self::error_at(
                tok,
                format!("unsupported token {}: {} are outside the accepted grammar", tok, construct),
            ))
        } else {
            Ok(())
        }
    }

    pub fn parse_unit(&mut self) -> PResult<Vec<ClassDecl>> {
        let mut classes = Vec::new();
        while self.peek().kind != TokenKind::Eof {
            classes.push(self.parse_class()?);
        }
        Ok(classes)
    }

    fn skip_modifiers(&mut self) -> PResult<()> {
        loop {
            self.reject_unsupported()?;
            let tok = self.peek();
            if tok.kind == TokenKind::Ident && MODIFIERS.contains(&tok.text.as_str()) {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn parse_class(&mut self) -> PResult<ClassDecl> {
        let start = self.pos;
        self.skip_modifiers()?;
        if !self.peek().is_word("class") {
            return Err(self.unexpected("`class`"));
        }
        let (line, column) = (self.peek().line, self.peek().column);
        self.bump();
        let name = self.expect_ident("a class name")?;

        let mut super_types = Vec::new();
        if self.peek().is_word("extends") {
            self.bump();
            super_types.push(self.parse_type(false)?);
        }
        if self.peek().is_word("implements") {
            self.bump();
            super_types.push(self.parse_type(false)?);
            while self.peek().is_punct(",") {
                self.bump();
                super_types.push(self.parse_type(false)?);
            }
        }
        self.reject_unsupported()?;
        self.expect_punct("{")?;

        let mut fields = Vec::new();
        let mut methods = Vec::new();
        while !self.peek().is_punct("}") {
            if self.peek().kind == TokenKind::Eof {
                return Err(self.unexpected("`}`"));
            }
            self.parse_member(&name, &mut fields, &mut methods)?;
        }
        self.bump();

        let mut lines: Vec<usize> = self.tokens[start..self.pos].iter().map(|t| t.line).collect();
        lines.dedup();
        Ok(ClassDecl {
            name,
            line,
            column,
            super_types,
            fields,
            methods,
            loc: lines.len(),
        })
    }

    fn parse_member(
        &mut self,
        class_name: &str,
        fields: &mut Vec<(TypeRef, String)>,
        methods: &mut Vec<MethodDecl>,
    ) -> PResult<()> {
        self.skip_modifiers()?;
        let tok = self.peek();
        if tok.is_word("class") {
            return Err(Self::error_at(
                tok,
                "unsupported token `class`: nested classes are outside the accepted grammar",
            ));
        }
        if tok.is_punct("{") {
            return Err(Self::error_at(
                tok,
                "unsupported token `{`: initializer blocks are outside the accepted grammar",
            ));
        }
        if tok.is_word(class_name) && self.peek_at(1).is_punct("(") {
            self.bump();
            let params = self.parse_params()?;
            let body = self.parse_block()?;
            methods.push(MethodDecl {
                name: class_name.to_string(),
                is_constructor: true,
                return_type: None,
                params,
                body,
            });
            return Ok(());
        }

        let ty = self.parse_type(true)?;
        let name = self.expect_ident("a member name")?;
        if self.peek().is_punct("(") {
            let params = self.parse_params()?;
            let body = self.parse_block()?;
            methods.push(MethodDecl {
                name,
                is_constructor: false,
                return_type: if ty.name == "void" && ty.dims == 0 {
                    None
                } else {
                    Some(ty)
                },
                params,
                body,
            });
            return Ok(());
        }

        if ty.name == "void" {
            return Err(Self::error_at(self.peek(), "fields cannot have type `void`"));
        }
        let mut names = vec![name];
        loop {
            let tok = self.peek();
            if tok.is_punct("=") {
                return Err(Self::error_at(
                    tok,
                    "unsupported token `=`: field initializers are outside the accepted grammar",
                ));
            }
            if tok.is_punct(",") {
                self.bump();
                names.push(self.expect_ident("a field name")?);
            } else {
                break;
            }
        }
        self.expect_punct(";")?;
        fields.extend(names.into_iter().map(|n| (ty.clone(), n)));
        Ok(())
    }

    fn parse_type(&mut self, allow_void: bool) -> PResult<TypeRef> {
        self.reject_unsupported()?;
        let tok = self.peek();
        let name = if tok.kind == TokenKind::Ident
            && (is_primitive(&tok.text) || !is_reserved(&tok.text))
        {
            tok.text.clone()
        } else {
            return Err(self.unexpected("a type"));
        };
        if name == "void" && !allow_void {
            return Err(self.unexpected("a type"));
        }
        self.bump();
        if self.peek().is_punct("<") {
            return Err(Self::error_at(
                self.peek(),
                "unsupported token `<`: generic types are outside the accepted grammar",
            ));
        }
        let mut dims = 0;
        while self.peek().is_punct("[") && self.peek_at(1).is_punct("]") {
            self.bump();
            self.bump();
            dims += 1;
        }
        if name == "void" && dims > 0 {
            return Err(self.unexpected("an identifier"));
        }
        Ok(TypeRef { name, dims })
    }

    fn parse_params(&mut self) -> PResult<Vec<(TypeRef, String)>> {
        self.expect_punct("(")?;
        let mut params = Vec::new();
        if self.peek().is_punct(")") {
            self.bump();
            return Ok(params);
        }
        loop {
            if self.peek().is_word("final") {
                self.bump();
            }
            self.reject_unsupported()?;
            let ty = self.parse_type(false)?;
            let name = self.expect_ident("a parameter name")?;
            params.push((ty, name));
            if self.peek().is_punct(",") {
                self.bump();
            } else {
                break;
            }
        }
        self.expect_punct(")")?;
        Ok(params)
    }

    fn parse_block(&mut self) -> PResult<Vec<Stmt>> {
        self.reject_unsupported()?;
        self.expect_punct("{")?;
        let mut body = Vec::new();
        while !self.peek().is_punct("}") {
            if self.peek().kind == TokenKind::Eof {
                return Err(self.unexpected("`}`"));
            }
            body.push(self.parse_stmt()?);
        }
        self.bump();
        Ok(body)
    }

    fn starts_local_decl(&self) -> bool {
        let tok = self.peek();
        if tok.kind != TokenKind::Ident {
            return false;
        }
        if is_primitive(&tok.text) {
            return true;
        }
        if is_reserved(&tok.text) {
            return false;
        }
        let next = self.peek_at(1);
        (next.kind == TokenKind::Ident && !is_reserved(&next.text))
            || (next.is_punct("[") && self.peek_at(2).is_punct("]"))
    }

    fn parse_stmt(&mut self) -> PResult<Stmt> {
        self.reject_unsupported()?;
        let tok = self.peek();
        if tok.is_punct("{") {
            return Err(Self::error_at(
                tok,
                "unsupported token `{`: nested blocks are outside the accepted grammar",
            ));
        }
        if tok.is_word("return") {
            self.bump();
            if self.peek().is_punct(";") {
                self.bump();
                return Ok(Stmt::Return(None));
            }
            let value = self.parse_expr()?;
            self.expect_punct(";")?;
            return Ok(Stmt::Return(Some(value)));
        }
        if self.starts_local_decl() {
            let ty = self.parse_type(false)?;
            let name = self.expect_ident("a variable name")?;
            let init = if self.peek().is_punct("=") {
                self.bump();
                Some(self.parse_expr()?)
            } else {
                None
            };
            self.expect_punct(";")?;
            return Ok(Stmt::Local { ty, name, init });
        }

        let start = self.peek().clone();
        let expr = self.parse_expr()?;
        if self.peek().is_punct("=") {
            if !matches!(expr, Expr::Name(_) | Expr::Field { .. }) {
                return Err(Self::error_at(&start, "invalid assignment target"));
            }
            self.bump();
            let value = self.parse_expr()?;
            self.expect_punct(";")?;
            return Ok(Stmt::Assign {
                target: expr,
                value,
            });
        }
        if !matches!(expr, Expr::Call { .. } | Expr::New { .. }) {
            self.reject_unsupported()?;
            return Err(if self.peek().is_punct(";") {
                Self::error_at(&start, format!("{} does not start a statement", start))
            } else {
                self.unexpected("`=` or `;`")
            });
        }
        self.expect_punct(";")?;
        Ok(Stmt::Expr(expr))
    }

    fn parse_args(&mut self) -> PResult<Vec<Expr>> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if self.peek().is_punct(")") {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.parse_expr()?);
            if self.peek().is_punct(",") {
                self.bump();
            } else {
                break;
            }
        }
        self.reject_unsupported()?;
        self.expect_punct(")")?;
        Ok(args)
    }

    /// True when the `(` at the cursor opens a lambda parameter list.
    fn paren_starts_lambda(&self) -> bool {
        let mut depth = 0usize;
        let mut i = self.pos;
        while i < self.tokens.len() {
            let tok = &self.tokens[i];
            if tok.is_punct("(") {
                depth += 1;
            } else if tok.is_punct(")") {
                depth -= 1;
                if depth == 0 {
                    return self
                        .tokens
                        .get(i + 1)
                        .is_some_and(|t| t.is_punct("->"));
                }
            } else if tok.kind == TokenKind::Eof {
                return false;
            }
            i += 1;
        }
        false
    }

    fn parse_expr(&mut self) -> PResult<Expr> {
        let mut expr = self.parse_primary()?;
        while self.peek().is_punct(".") {
            self.bump();
            self.reject_unsupported()?;
            let name = self.expect_ident("a member name")?;
            if self.peek().is_punct("(") {
                let args = self.parse_args()?;
                expr = Expr::Call {
                    target: Some(Box::new(expr)),
                    name,
                    args,
                };
            } else {
                expr = Expr::Field {
                    target: Box::new(expr),
                    name,
                };
            }
        }
        self.reject_unsupported()?;
        Ok(expr)
    }

    fn parse_primary(&mut self) -> PResult<Expr> {
        self.reject_unsupported()?;
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Int | TokenKind::Float | TokenKind::Str | TokenKind::Char => {
                self.bump();
                Ok(Expr::Literal)
            }
            TokenKind::Punct if tok.text == "(" => {
                if self.paren_starts_lambda() {
                    Err(Self::error_at(
                        &tok,
                        "unsupported token `(`: lambda expressions are outside the accepted grammar",
                    ))
                } else {
                    Err(Self::error_at(
                        &tok,
                        "unsupported token `(`: parenthesized expressions and casts are outside the accepted grammar",
                    ))
                }
            }
            TokenKind::Ident => match tok.text.as_str() {
                "true" | "false" | "null" => {
                    self.bump();
                    Ok(Expr::Literal)
                }
                "this" => {
                    self.bump();
                    if self.peek().is_punct("(") {
                        return Err(Self::error_at(
                            &tok,
                            "unsupported token `this`: constructor chaining is outside the accepted grammar",
                        ));
                    }
                    Ok(Expr::This)
                }
                "new" => {
                    self.bump();
                    let ty = self.parse_type(false)?;
                    if is_primitive(&ty.name) || ty.dims > 0 || self.peek().is_punct("[") {
                        return Err(Self::error_at(
                            &tok,
                            "unsupported token `new`: array creation is outside the accepted grammar",
                        ));
                    }
                    let args = self.parse_args()?;
                    if self.peek().is_punct("{") {
                        return Err(Self::error_at(
                            self.peek(),
                            "unsupported token `{`: anonymous classes are outside the accepted grammar",
                        ));
                    }
                    Ok(Expr::New {
                        type_name: ty.name,
                        args,
                    })
                }
                word if is_reserved(word) => Err(self.unexpected("an expression")),
                _ => {
                    self.bump();
                    if self.peek().is_punct("->") {
                        return Err(Self::error_at(
                            self.peek(),
                            "unsupported token `->`: lambda expressions are outside the accepted grammar",
                        ));
                    }
                    if self.peek().is_punct("(") {
                        let args = self.parse_args()?;
                        Ok(Expr::Call {
                            target: None,
                            name: tok.text,
                            args,
                        })
                    } else {
                        Ok(Expr::Name(tok.text))
                    }
                }
            },
            _ => Err(self.unexpected("an expression")),
        }
    }
}
