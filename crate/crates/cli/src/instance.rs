//! Instance files: one directive per line, `#` starts a comment.
//!
//! ```text
//! ring    <ring>
//! group   <group>
//! action  <element> <automorphism>
//! module  regular | module [<factors>] hom <k>
//! target  module | identity | twist | <ring> hom <k>
//! check   <name>...
//! expect  <quantity> <n>
//!
//! <ring>  := zmod N | gf P [coeffs] | poly P [coeffs] | matrix N P
//!          | endo [factors] | product(<ring>, ...) | tables <table> <table>
//! <group> := cyclic N | symmetric N | trivial | product(<group>, ...) | table <table>
//! <automorphism> := id | N | perm [images]
//! <table> := [row; row; ...]
//! ```

use std::fmt;
use std::sync::Arc;

use twistsemi::abelian::FiniteAbelianGroup;
use twistsemi::actions::{make_action, GroupAction};
use twistsemi::aut::{enumerate_automorphisms, AutGroup};
use twistsemi::group::FiniteGroup;
use twistsemi::hom::RingHom;
use twistsemi::recipe::{GroupRecipe, RingRecipe};
use twistsemi::ring::FiniteRing;
use twistsemi::search::{ring_homs, Constraints, SearchOptions};
use twistsemi::semilin::ModuleStructure;
use twistsemi::twist::twistify;
use twistsemi::{Caps, Elem, Error};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(usize),
    Open(char),
    Close(char),
    Comma,
    Semi,
    Arrow,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Open(c) | Tok::Close(c) => write!(f, "`{c}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::End => f.write_str("end of line"),
        }
    }
}

struct Cursor {
    line: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Cursor {
    fn lex(line: usize, text: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '[' | '(' => {
                    toks.push((col, Tok::Open(c)));
                    i += 1;
                }
                ']' | ')' => {
                    toks.push((col, Tok::Close(c)));
                    i += 1;
                }
                ',' => {
                    toks.push((col, Tok::Comma));
                    i += 1;
                }
                ';' => {
                    toks.push((col, Tok::Semi));
                    i += 1;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    toks.push((col, Tok::Arrow));
                    i += 2;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let n = s.parse().map_err(|_| ParseError {
                        line,
                        col,
                        message: format!("integer `{s}` is too large"),
                    })?;
                    toks.push((col, Tok::Int(n)));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    toks.push((col, Tok::Word(chars[start..i].iter().collect())));
                }
                _ => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        }
        toks.push((chars.len() + 1, Tok::End));
        Ok(Cursor { line, toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn col(&self) -> usize {
        self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col(),
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn word(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Word(w) => {
                let w = w.clone();
                self.next();
                Ok(w)
            }
            _ => Err(self.unexpected("a keyword")),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Word(w) if w == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of line")),
        }
    }

    /// `[a b c]`
    fn list(&mut self) -> Result<Vec<usize>, ParseError> {
        self.expect(Tok::Open('['))?;
        let mut out = Vec::new();
        while let Tok::Int(_) = self.peek() {
            out.push(self.int()?);
        }
        self.expect(Tok::Close(']'))?;
        Ok(out)
    }

    /// `[a b; c d]`
    fn table(&mut self) -> Result<Vec<Vec<usize>>, ParseError> {
        self.expect(Tok::Open('['))?;
        let mut rows = vec![Vec::new()];
        loop {
            match self.peek() {
                Tok::Int(_) => rows.last_mut().expect("nonempty").push(self.int()?),
                Tok::Semi => {
                    self.next();
                    rows.push(Vec::new());
                }
                Tok::Close(']') => {
                    self.next();
                    return Ok(rows);
                }
                _ => return Err(self.unexpected("an integer, `;` or `]`")),
            }
        }
    }

    fn parenthesized<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect(Tok::Open('('))?;
        let mut out = vec![item(self)?];
        while *self.peek() == Tok::Comma {
            self.next();
            out.push(item(self)?);
        }
        self.expect(Tok::Close(')'))?;
        Ok(out)
    }

    fn ring(&mut self) -> Result<RingRecipe, ParseError> {
        let col = self.col();
        let kw = self.word()?;
        Ok(match kw.as_str() {
            "zmod" => RingRecipe::Zmod(self.int()?),
            "gf" => RingRecipe::Gf {
                p: self.int()?,
                modulus: self.list()?,
            },
            "poly" => RingRecipe::Poly {
                p: self.int()?,
                modulus: self.list()?,
            },
            "matrix" => RingRecipe::Matrix {
                n: self.int()?,
                p: self.int()?,
            },
            "endo" => RingRecipe::Endo(self.list()?),
            "product" => RingRecipe::Product(self.parenthesized(Self::ring)?),
            "tables" => RingRecipe::Tables {
                add: self.table()?,
                mul: self.table()?,
            },
            other => {
                return Err(ParseError {
                    line: self.line,
                    col,
                    message: format!("unknown ring recipe `{other}`"),
                })
            }
        })
    }

    fn group(&mut self) -> Result<GroupRecipe, ParseError> {
        let col = self.col();
        let kw = self.word()?;
        Ok(match kw.as_str() {
            "cyclic" => GroupRecipe::Cyclic(self.int()?),
            "symmetric" => GroupRecipe::Symmetric(self.int()?),
            "trivial" => GroupRecipe::Cyclic(1),
            "product" => GroupRecipe::Product(self.parenthesized(Self::group)?),
            "table" => GroupRecipe::Table(self.table()?),
            other => {
                return Err(ParseError {
                    line: self.line,
                    col,
                    message: format!("unknown group recipe `{other}`"),
                })
            }
        })
    }
}

/// How a generator's automorphism is named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutRef {
    Index(usize),
    Perm(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Regular,
    Hom { factors: Vec<usize>, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    Module,
    Identity,
    Twist,
    Hom { ring: RingRecipe, k: usize },
}

/// A directive together with the line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located<T> {
    pub line: usize,
    pub value: T,
}

/// Parsed but not yet built instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstanceFile {
    pub ring: Option<Located<RingRecipe>>,
    pub group: Option<Located<GroupRecipe>>,
    pub action: Vec<Located<(Elem, AutRef)>>,
    pub module: Option<Located<ModuleSpec>>,
    pub target: Option<Located<TargetSpec>>,
    pub checks: Vec<Located<String>>,
    pub expects: Vec<Located<(String, usize)>>,
}

/// Quantities an `expect` line may name.
pub const QUANTITIES: [&str; 6] = [
    "automorphisms",
    "units",
    "twisted_order",
    "semi_order",
    "hom_under",
    "hom_over",
];

pub const CHECKS: [&str; 9] = [
    "ring_axioms",
    "semi_group",
    "bijection",
    "naturality",
    "modules_corollary",
    "unit_counit",
    "functor_laws",
    "oracle",
    "all",
];

pub fn parse_ring_recipe(text: &str) -> Result<RingRecipe, ParseError> {
    let mut c = Cursor::lex(1, text)?;
    let r = c.ring()?;
    c.end()?;
    Ok(r)
}

pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
    let mut file = InstanceFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut c = Cursor::lex(line, raw)?;
        if *c.peek() == Tok::End {
            continue;
        }
        let col = c.col();
        let directive = c.word()?;
        let duplicate = |what: &str| ParseError {
            line,
            col,
            message: format!("duplicate `{what}` directive"),
        };
        match directive.as_str() {
            "ring" => {
                if file.ring.is_some() {
                    return Err(duplicate("ring"));
                }
                file.ring = Some(Located { line, value: c.ring()? });
            }
            "group" => {
                if file.group.is_some() {
                    return Err(duplicate("group"));
                }
                file.group = Some(Located { line, value: c.group()? });
            }
            "action" => {
                let g = c.int()?;
                if *c.peek() == Tok::Arrow {
                    c.next();
                }
                let a = match c.peek().clone() {
                    Tok::Int(n) => {
                        c.next();
                        AutRef::Index(n)
                    }
                    Tok::Word(w) if w == "id" => {
                        c.next();
                        AutRef::Index(0)
                    }
                    Tok::Word(w) if w == "perm" => {
                        c.next();
                        AutRef::Perm(c.list()?)
                    }
                    _ => return Err(c.unexpected("an automorphism index, `id` or `perm [...]`")),
                };
                file.action.push(Located { line, value: (g, a) });
            }
            "module" => {
                if file.module.is_some() {
                    return Err(duplicate("module"));
                }
                let value = match c.peek() {
                    Tok::Word(w) if w == "regular" => {
                        c.next();
                        ModuleSpec::Regular
                    }
                    Tok::Open('[') => {
                        let factors = c.list()?;
                        c.keyword("hom")?;
                        ModuleSpec::Hom { factors, k: c.int()? }
                    }
                    _ => return Err(c.unexpected("`regular` or `[factors] hom k`")),
                };
                file.module = Some(Located { line, value });
            }
            "target" => {
                if file.target.is_some() {
                    return Err(duplicate("target"));
                }
                let value = match c.peek() {
                    Tok::Word(w) if w == "module" => {
                        c.next();
                        TargetSpec::Module
                    }
                    Tok::Word(w) if w == "identity" => {
                        c.next();
                        TargetSpec::Identity
                    }
                    Tok::Word(w) if w == "twist" => {
                        c.next();
                        TargetSpec::Twist
                    }
                    _ => {
                        let ring = c.ring()?;
                        c.keyword("hom")?;
                        TargetSpec::Hom { ring, k: c.int()? }
                    }
                };
                file.target = Some(Located { line, value });
            }
            "check" => {
                if *c.peek() == Tok::End {
                    return Err(c.unexpected("a check name"));
                }
                while *c.peek() != Tok::End {
                    let col = c.col();
                    let name = c.word()?;
                    if !CHECKS.contains(&name.as_str()) {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!("unknown check `{name}` (known: {})", CHECKS.join(", ")),
                        });
                    }
                    file.checks.push(Located { line, value: name });
                }
            }
            "expect" => {
                let col = c.col();
                let q = c.word()?;
                if !QUANTITIES.contains(&q.as_str()) {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unknown quantity `{q}` (known: {})", QUANTITIES.join(", ")),
                    });
                }
                let n = c.int()?;
                file.expects.push(Located { line, value: (q, n) });
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
        c.end()?;
    }
    Ok(file)
}

/// A structural error raised while building a parsed file, with the line
/// of the offending directive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildError {
    pub line: usize,
    pub error: Error,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.line, self.error)
    }
}

/// Validated domain objects of an instance file.
#[derive(Debug, Clone)]
pub struct Instance {
    pub ring: Arc<FiniteRing>,
    pub aut: Arc<AutGroup>,
    pub group: Arc<FiniteGroup>,
    pub action: GroupAction,
    pub module: Option<ModuleStructure>,
    pub target: Option<RingHom>,
    pub checks: Vec<String>,
    pub expects: Vec<(String, usize)>,
}

impl InstanceFile {
    pub fn build(&self, caps: &Caps) -> Result<Instance, BuildError> {
        let at = |line: usize| move |error: Error| BuildError { line, error };
        let ring_line = self.ring.as_ref().ok_or(BuildError {
            line: 0,
            error: Error::InvalidRecipe("missing `ring` directive".into()),
        })?;
        let ring = ring_line.value.build(caps).map_err(at(ring_line.line))?;
        let aut = Arc::new(enumerate_automorphisms(&ring, caps).map_err(at(ring_line.line))?);
        let group = match &self.group {
            Some(g) => g.value.build(caps).map_err(at(g.line))?,
            None => Arc::new(FiniteGroup::trivial()),
        };
        let action = if self.action.is_empty() {
            GroupAction::trivial(group.clone(), aut.clone())
        } else {
            let mut images = Vec::new();
            for a in &self.action {
                let (g, r) = &a.value;
                let idx = match r {
                    AutRef::Index(i) => *i,
                    AutRef::Perm(p) => aut.index_of(p).ok_or_else(|| BuildError {
                        line: a.line,
                        error: Error::UnknownAutomorphism(format!("{p:?} is not an automorphism")),
                    })?,
                };
                images.push((*g, idx));
            }
            let line = self.action[0].line;
            make_action(&group, &aut, &images).map_err(at(line))?
        };
        let module = match &self.module {
            None => None,
            Some(m) => Some(
                match &m.value {
                    ModuleSpec::Regular => ModuleStructure::regular(&ring, caps),
                    ModuleSpec::Hom { factors, k } => FiniteAbelianGroup::new(factors.clone())
                        .and_then(|mg| ModuleStructure::from_hom_index(&ring, mg, *k, caps)),
                }
                .map_err(at(m.line))?,
            ),
        };
        let target = match &self.target {
            None => module.as_ref().map(|m| m.chi().clone()),
            Some(t) => Some(match &t.value {
                TargetSpec::Module => module.as_ref().map(|m| m.chi().clone()).ok_or(BuildError {
                    line: t.line,
                    error: Error::InvalidRecipe("`target module` needs a `module` directive".into()),
                })?,
                TargetSpec::Identity => RingHom::identity(&ring),
                TargetSpec::Twist => twistify(&action, caps).map_err(at(t.line))?.structure_map().clone(),
                TargetSpec::Hom { ring: s, k } => {
                    let s = s.build(caps).map_err(at(t.line))?;
                    let homs = ring_homs(&ring, &s, &Constraints::new(), &SearchOptions::from_caps(caps))
                        .map_err(at(t.line))?;
                    let n = homs.len();
                    homs.into_iter().nth(*k).ok_or(BuildError {
                        line: t.line,
                        error: Error::InvalidRecipe(format!("hom index {k} out of range ({n} homs)")),
                    })?
                }
            }),
        };
        let mut checks: Vec<String> = Vec::new();
        for c in &self.checks {
            let names: Vec<&str> = if c.value == "all" {
                // `all` expands to whatever the declared objects support
                CHECKS[..CHECKS.len() - 1]
                    .iter()
                    .copied()
                    .filter(|n| match *n {
                        "modules_corollary" => module.is_some(),
                        "semi_group" | "bijection" | "naturality" | "unit_counit" => target.is_some(),
                        _ => true,
                    })
                    .collect()
            } else {
                vec![c.value.as_str()]
            };
            for n in names {
                if !checks.iter().any(|x| x == n) {
                    checks.push(n.to_string());
                }
            }
        }
        Ok(Instance {
            ring,
            aut,
            group,
            action,
            module,
            target,
            checks,
            expects: self.expects.iter().map(|e| e.value.clone()).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_flagship() {
        let f = parse(
            "# F4 with Frobenius\nring gf 2 [1 1 1]\ngroup cyclic 2\naction 1 -> 1\nmodule regular\ncheck all\n",
        )
        .unwrap();
        assert_eq!(
            f.ring.unwrap().value,
            RingRecipe::Gf {
                p: 2,
                modulus: vec![1, 1, 1]
            }
        );
        assert_eq!(f.action[0].value, (1, AutRef::Index(1)));
        assert_eq!(f.checks.len(), 1);
    }

    #[test]
    fn nested_products_and_tables() {
        let r = parse_ring_recipe("product(zmod 2, product(zmod 3, tables [0 1; 1 0] [0 0; 0 1]))").unwrap();
        let RingRecipe::Product(fs) = r else { panic!() };
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("ring zmod 4\ngroup cyclic x\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 14));
        let e = parse("ring zmod 4 $\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 13));
        let e = parse("check everything\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
    }

    #[test]
    fn build_reports_the_directive_line() {
        let f = parse("ring zmod 4\ngroup cyclic 3\naction 1 -> 5\n").unwrap();
        let e = f.build(&Caps::default()).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.error, Error::UnknownAutomorphism(_)));
    }
}
