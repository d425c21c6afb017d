//! TPTP CNF reader and writer (no equality).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use synthprove_core::{
    Clause, ClauseLog, ClauseRecord, Literal, Problem, Provenance, Signature, SignatureError, Term,
    Var,
};

#[derive(Debug, thiserror::Error)]
pub enum TptpError {
    #[error("{file}:{line}:{col}: syntax error: {message}")]
    Syntax { file: String, line: usize, col: usize, message: String },
    #[error("{file}:{line}:{col}: unsupported: {feature}")]
    Unsupported { file: String, line: usize, col: usize, feature: String },
    #[error("{file}:{line}:{col}: {source}")]
    Signature { file: String, line: usize, col: usize, source: SignatureError },
    #[error("include cycle through {0}")]
    IncludeCycle(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}: no clauses")]
    NoClauses(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lower(String),
    Upper(String),
    Quoted(String),
    Dollar(String),
    Int(String),
    DoubleQuoted,
    Punct(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Int(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("`'{s}'`"),
            Tok::Dollar(s) => format!("`${s}`"),
            Tok::DoubleQuoted => "a string".into(),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

const PUNCT: [&str; 19] = [
    "<=>", "<~>", "=>", "<=", "!=", "~|", "~&", "-->", "(", ")", "[", "]", ",", ".", "|", "&", "~", "=", ":",
];

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1 }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) -> Result<(), (usize, usize, String)> {
        loop {
            match self.peek_char() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                Some('/') if self.src[self.pos..].starts_with("/*") => {
                    let (line, col) = (self.line, self.col);
                    self.bump();
                    self.bump();
                    loop {
                        if self.src[self.pos..].starts_with("*/") {
                            self.bump();
                            self.bump();
                            break;
                        }
                        if self.bump().is_none() {
                            return Err((line, col, "unterminated comment".into()));
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek_char(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        self.src[start..self.pos].to_string()
    }

    fn next(&mut self) -> Result<Spanned, (usize, usize, String)> {
        self.skip_trivia()?;
        let (line, col) = (self.line, self.col);
        let at = |tok| Ok(Spanned { tok, line, col });
        let Some(c) = self.peek_char() else {
            return at(Tok::Eof);
        };
        if c.is_ascii_lowercase() {
            return at(Tok::Lower(self.word()));
        }
        if c.is_ascii_uppercase() || c == '_' {
            return at(Tok::Upper(self.word()));
        }
        if c.is_ascii_digit() {
            return at(Tok::Int(self.word()));
        }
        if c == '$' {
            self.bump();
            return at(Tok::Dollar(self.word()));
        }
        if c == '\'' || c == '"' {
            self.bump();
            let mut text = String::new();
            loop {
                match self.bump() {
                    None => return Err((line, col, "unterminated quoted name".into())),
                    Some('\\') => match self.bump() {
                        Some(e) => text.push(e),
                        None => return Err((line, col, "unterminated quoted name".into())),
                    },
                    Some(q) if q == c => break,
                    Some(other) => text.push(other),
                }
            }
            return at(if c == '\'' { Tok::Quoted(text) } else { Tok::DoubleQuoted });
        }
        for p in PUNCT {
            if self.src[self.pos..].starts_with(p) {
                for _ in 0..p.len() {
                    self.bump();
                }
                return at(Tok::Punct(p));
            }
        }
        Err((line, col, format!("unexpected character `{c}`")))
    }
}

/// Where `include` directives are looked up.
pub trait IncludeResolver {
    /// Returns the canonical key used for cycle detection and the file text.
    fn resolve(&mut self, name: &str) -> Result<(String, String), TptpError>;
}

impl<F: FnMut(&str) -> Result<(String, String), TptpError>> IncludeResolver for F {
    fn resolve(&mut self, name: &str) -> Result<(String, String), TptpError> {
        self(name)
    }
}

/// Resolver that refuses every include.
pub fn no_includes(name: &str) -> Result<(String, String), TptpError> {
    Err(TptpError::Io { path: name.into(), source: std::io::Error::new(std::io::ErrorKind::NotFound, "includes are not available") })
}

/// Resolves include paths against one root directory.
pub struct DirResolver {
    pub root: PathBuf,
}

impl IncludeResolver for DirResolver {
    fn resolve(&mut self, name: &str) -> Result<(String, String), TptpError> {
        let path = self.root.join(name);
        let text = std::fs::read_to_string(&path).map_err(|source| TptpError::Io { path: path.display().to_string(), source })?;
        let key = path.canonicalize().unwrap_or(path);
        Ok((key.display().to_string(), text))
    }
}

struct Builder<'r> {
    sig: Signature,
    axioms: Vec<Clause>,
    negated: Vec<Clause>,
    files: Vec<String>,
    stack: Vec<String>,
    resolver: &'r mut dyn IncludeResolver,
}

struct Parser<'a, 'b, 'r> {
    lex: Lexer<'a>,
    cur: Spanned,
    file: &'b str,
    b: &'b mut Builder<'r>,
    /// Only these formula names are kept (from `include('f', [names])`).
    select: Option<&'b BTreeSet<String>>,
}

type PResult<T> = Result<T, TptpError>;

impl<'a, 'b, 'r> Parser<'a, 'b, 'r> {
    fn new(src: &'a str, file: &'b str, b: &'b mut Builder<'r>, select: Option<&'b BTreeSet<String>>) -> PResult<Self> {
        let mut lex = Lexer::new(src);
        let cur = lex.next().map_err(|(line, col, message)| TptpError::Syntax { file: file.into(), line, col, message })?;
        Ok(Parser { lex, cur, file, b, select })
    }

    fn syntax<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(TptpError::Syntax { file: self.file.into(), line: self.cur.line, col: self.cur.col, message: message.into() })
    }

    fn unsupported<T>(&self, feature: impl Into<String>) -> PResult<T> {
        Err(TptpError::Unsupported { file: self.file.into(), line: self.cur.line, col: self.cur.col, feature: feature.into() })
    }

    fn advance(&mut self) -> PResult<Tok> {
        let next = self
            .lex
            .next()
            .map_err(|(line, col, message)| TptpError::Syntax { file: self.file.into(), line, col, message })?;
        Ok(std::mem::replace(&mut self.cur, next).tok)
    }

    fn expect(&mut self, p: &'static str) -> PResult<()> {
        if self.cur.tok == Tok::Punct(p) {
            self.advance()?;
            Ok(())
        } else {
            self.syntax(format!("expected `{p}`, found {}", self.cur.tok.describe()))
        }
    }

    fn is(&self, p: &str) -> bool {
        matches!(self.cur.tok, Tok::Punct(q) if q == p)
    }

    fn file(mut self) -> PResult<()> {
        loop {
            match self.cur.tok.clone() {
                Tok::Eof => return Ok(()),
                Tok::Lower(w) if w == "cnf" => self.cnf()?,
                Tok::Lower(w) if w == "include" => self.include()?,
                Tok::Lower(w) if matches!(w.as_str(), "fof" | "tff" | "thf" | "tcf" | "tpi") => {
                    return self.unsupported(format!("{w} statements (only cnf is accepted)"));
                }
                other => return self.syntax(format!("expected `cnf` or `include`, found {}", other.describe())),
            }
        }
    }

    fn formula_name(&mut self) -> PResult<String> {
        match self.advance()? {
            Tok::Lower(s) | Tok::Int(s) | Tok::Quoted(s) => Ok(s),
            other => self.syntax(format!("expected a formula name, found {}", other.describe())),
        }
    }

    fn include(&mut self) -> PResult<()> {
        self.advance()?;
        self.expect("(")?;
        let target = match self.advance()? {
            Tok::Quoted(s) => s,
            other => return self.syntax(format!("expected a quoted file name, found {}", other.describe())),
        };
        let mut select = None;
        if self.is(",") {
            self.advance()?;
            self.expect("[")?;
            let mut names = BTreeSet::new();
            if !self.is("]") {
                names.insert(self.formula_name()?);
                while self.is(",") {
                    self.advance()?;
                    names.insert(self.formula_name()?);
                }
            }
            self.expect("]")?;
            select = Some(names);
        }
        self.expect(")")?;
        self.expect(".")?;
        let (key, text) = self.b.resolver.resolve(&target)?;
        if self.b.stack.contains(&key) {
            return Err(TptpError::IncludeCycle(key));
        }
        self.b.stack.push(key.clone());
        if !self.b.files.contains(&key) {
            self.b.files.push(key.clone());
        }
        let inner_select = match (select.as_ref(), self.select) {
            (Some(s), _) => Some(s),
            (None, outer) => outer,
        };
        Parser::new(&text, &key, self.b, inner_select)?.file()?;
        self.b.stack.pop();
        Ok(())
    }

    fn cnf(&mut self) -> PResult<()> {
        self.advance()?;
        self.expect("(")?;
        let name = self.formula_name()?;
        self.expect(",")?;
        let (role_line, role_col) = (self.cur.line, self.cur.col);
        let role = match self.advance()? {
            Tok::Lower(r) => r,
            other => return self.syntax(format!("expected a role, found {}", other.describe())),
        };
        let negated = match role.as_str() {
            "axiom" | "hypothesis" | "lemma" => false,
            "negated_conjecture" => true,
            "conjecture" => {
                return Err(TptpError::Unsupported {
                    file: self.file.into(),
                    line: role_line,
                    col: role_col,
                    feature: "role conjecture in cnf; negate it first and use negated_conjecture".into(),
                })
            }
            other => {
                return Err(TptpError::Unsupported {
                    file: self.file.into(),
                    line: role_line,
                    col: role_col,
                    feature: format!("role `{other}`"),
                })
            }
        };
        self.expect(",")?;
        let mut vars = BTreeMap::new();
        let clause = self.disjunction(&mut vars)?;
        if self.is(",") {
            self.skip_annotations()?;
        }
        self.expect(")")?;
        self.expect(".")?;
        if self.select.is_none_or(|s| s.contains(&name)) {
            if negated {
                self.b.negated.push(clause);
            } else {
                self.b.axioms.push(clause);
            }
        }
        Ok(())
    }

    fn skip_annotations(&mut self) -> PResult<()> {
        let mut depth = 0usize;
        loop {
            match &self.cur.tok {
                Tok::Eof => return self.syntax("unterminated annotation"),
                Tok::Punct("(") | Tok::Punct("[") => depth += 1,
                Tok::Punct(")") | Tok::Punct("]") if depth == 0 => return Ok(()),
                Tok::Punct(")") | Tok::Punct("]") => depth -= 1,
                _ => {}
            }
            self.advance()?;
        }
    }

    fn disjunction(&mut self, vars: &mut BTreeMap<String, Var>) -> PResult<Clause> {
        if self.is("(") {
            self.advance()?;
            let c = self.disjunction(vars)?;
            self.expect(")")?;
            return Ok(c);
        }
        let mut lits = Vec::new();
        self.literal(vars, &mut lits)?;
        while self.is("|") {
            self.advance()?;
            self.literal(vars, &mut lits)?;
        }
        if self.is("&") || self.is("=>") || self.is("<=>") || self.is("<=") {
            return self.unsupported("non-clausal connective in cnf");
        }
        Ok(Clause::new(lits))
    }

    fn literal(&mut self, vars: &mut BTreeMap<String, Var>, out: &mut Vec<Literal>) -> PResult<()> {
        let negated = if self.is("~") {
            self.advance()?;
            true
        } else {
            false
        };
        let (line, col) = (self.cur.line, self.cur.col);
        match self.cur.tok.clone() {
            Tok::Dollar(d) if d == "false" => {
                self.advance()?;
                if negated {
                    return self.unsupported("negated `$false`");
                }
                Ok(())
            }
            Tok::Dollar(d) => self.unsupported(format!("`${d}`")),
            Tok::Upper(_) => {
                self.term(vars)?;
                if self.is("=") || self.is("!=") {
                    return self.unsupported("equality");
                }
                self.syntax("a variable cannot be used as an atom")
            }
            Tok::Lower(_) | Tok::Quoted(_) | Tok::Int(_) => {
                let name = self.symbol_name()?;
                let args = self.arguments(vars)?;
                if self.is("=") || self.is("!=") {
                    return self.unsupported("equality");
                }
                let pred = self.b.sig.predicate(&name, args.len()).map_err(|source| TptpError::Signature {
                    file: self.file.into(),
                    line,
                    col,
                    source,
                })?;
                out.push(Literal::new(negated, pred, args));
                Ok(())
            }
            Tok::Punct("(") if !negated => self.syntax("nested parentheses inside a disjunction"),
            other => self.syntax(format!("expected a literal, found {}", other.describe())),
        }
    }

    fn symbol_name(&mut self) -> PResult<String> {
        match self.advance()? {
            Tok::Lower(s) | Tok::Int(s) | Tok::Quoted(s) => Ok(s),
            other => self.syntax(format!("expected a symbol, found {}", other.describe())),
        }
    }

    fn arguments(&mut self, vars: &mut BTreeMap<String, Var>) -> PResult<Vec<Term>> {
        let mut args = Vec::new();
        if self.is("(") {
            self.advance()?;
            args.push(self.term(vars)?);
            while self.is(",") {
                self.advance()?;
                args.push(self.term(vars)?);
            }
            self.expect(")")?;
        }
        Ok(args)
    }

    fn term(&mut self, vars: &mut BTreeMap<String, Var>) -> PResult<Term> {
        let (line, col) = (self.cur.line, self.cur.col);
        match self.cur.tok.clone() {
            Tok::Upper(name) => {
                self.advance()?;
                let next = Var(vars.len() as u32);
                Ok(Term::Var(*vars.entry(name).or_insert(next)))
            }
            Tok::Lower(_) | Tok::Quoted(_) | Tok::Int(_) => {
                let name = self.symbol_name()?;
                let args = self.arguments(vars)?;
                let f = self.b.sig.functor(&name, args.len()).map_err(|source| TptpError::Signature {
                    file: self.file.into(),
                    line,
                    col,
                    source,
                })?;
                Ok(Term::App(f, args))
            }
            Tok::DoubleQuoted => self.unsupported("distinct objects"),
            Tok::Dollar(d) => self.unsupported(format!("`${d}`")),
            other => self.syntax(format!("expected a term, found {}", other.describe())),
        }
    }
}

/// Parses CNF text. `name` labels the problem and error messages;
/// includes go through `resolver`. Symbols are added to `signature`.
pub fn parse_tptp_cnf_with(
    text: &str,
    name: &str,
    signature: Signature,
    resolver: &mut dyn IncludeResolver,
) -> Result<Problem, TptpError> {
    let mut b = Builder {
        sig: signature,
        axioms: Vec::new(),
        negated: Vec::new(),
        files: Vec::new(),
        stack: vec![name.to_string()],
        resolver,
    };
    Parser::new(text, name, &mut b, None)?.file()?;
    if b.axioms.is_empty() && b.negated.is_empty() {
        return Err(TptpError::NoClauses(name.into()));
    }
    Ok(Problem { name: name.into(), axioms: b.axioms, negated_conjecture: b.negated, signature: b.sig, source_files: b.files })
}

pub fn parse_tptp_cnf(text: &str, name: &str, resolver: &mut dyn IncludeResolver) -> Result<Problem, TptpError> {
    parse_tptp_cnf_with(text, name, Signature::new(), resolver)
}

/// Reads a problem file; includes are resolved against `axiom_root`, or
/// the file's own directory when none is given.
pub fn load_problem(path: &Path, axiom_root: Option<&Path>) -> Result<Problem, TptpError> {
    let text = std::fs::read_to_string(path).map_err(|source| TptpError::Io { path: path.display().to_string(), source })?;
    let root = match axiom_root {
        Some(r) => r.to_path_buf(),
        None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string());
    let mut resolver = DirResolver { root };
    let mut problem = parse_tptp_cnf(&text, &path.display().to_string(), &mut resolver)?;
    problem.source_files.insert(0, path.display().to_string());
    problem.name = name;
    Ok(problem)
}

/// One clause in CNF syntax, e.g. `~p(X) | q(f(X,c))`, or `$false`.
pub fn serialize_clause(clause: &Clause, sig: &Signature) -> String {
    clause.display(sig).to_string()
}

/// A complete problem file: axioms then the negated conjecture.
pub fn write_problem(problem: &Problem, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "% {line}");
    }
    for (i, c) in problem.axioms.iter().enumerate() {
        let _ = writeln!(out, "cnf(ax{i}, axiom, {}).", serialize_clause(c, &problem.signature));
    }
    for (i, c) in problem.negated_conjecture.iter().enumerate() {
        let _ = writeln!(out, "cnf(goal{i}, negated_conjecture, {}).", serialize_clause(c, &problem.signature));
    }
    out
}

fn trace_line(r: &ClauseRecord, sig: &Signature) -> String {
    let body = serialize_clause(&r.clause, sig);
    match r.provenance {
        Provenance::Input => format!("cnf({}, axiom, {body}, introduced(input)).", r.id),
        _ => {
            let parents: Vec<String> = r.provenance.parents().iter().map(ToString::to_string).collect();
            format!(
                "cnf({}, plain, {body}, inference({}, [status(thm)], [{}])).",
                r.id,
                r.provenance.rule_name(),
                parents.join(",")
            )
        }
    }
}

/// The proof clauses in derivation order, one annotated `cnf` line each.
pub fn proof_trace(proof: &BTreeSet<synthprove_core::ClauseId>, log: &ClauseLog, sig: &Signature) -> String {
    let mut out = String::new();
    for id in proof {
        if let Some(r) = log.get(*id) {
            out.push_str(&trace_line(r, sig));
            out.push('\n');
        }
    }
    out
}
