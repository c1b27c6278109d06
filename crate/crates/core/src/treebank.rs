//! Penn-Treebank style bracketed constituency trees.
//!
//! A tree is written as `(LABEL child child ...)` for internal nodes and
//! `(TAG word)` for pre-terminals. Any run of whitespace separates atoms and
//! the canonical rendering uses single spaces, so
//! `parse_ptb(&t.to_string()) == t` for every tree.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Label of the wrapper node most constituency parsers put above the sentence.
pub const ROOT_LABEL: &str = "ROOT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("input contains no tree")]
    EmptyInput,
    #[error("unbalanced parentheses at byte {offset}")]
    UnbalancedParens { offset: usize },
    #[error("empty node at byte {offset}")]
    EmptyNode { offset: usize },
    #[error("node at byte {offset} has no label")]
    MissingLabel { offset: usize },
    #[error("unexpected token {token:?} at byte {offset}")]
    UnexpectedToken { offset: usize, token: String },
    #[error("trailing content after tree at byte {offset}")]
    TrailingContent { offset: usize },
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("invalid token {0:?}")]
    InvalidToken(String),
}

/// One node of a constituency parse. Leaves carry a surface token, internal
/// nodes carry at least one child; never both.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParseTree {
    label: String,
    children: Vec<ParseTree>,
    token: Option<String>,
}

fn valid_atom(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')')
}

impl ParseTree {
    /// Pre-terminal node, e.g. `(NN hypertension)`.
    pub fn leaf(label: impl Into<String>, token: impl Into<String>) -> Result<Self, TreeError> {
        let label = label.into();
        let token = token.into();
        if !valid_atom(&label) {
            return Err(TreeError::InvalidLabel(label));
        }
        if !valid_atom(&token) {
            return Err(TreeError::InvalidToken(token));
        }
        Ok(Self { label, children: Vec::new(), token: Some(token) })
    }

    pub fn node(label: impl Into<String>, children: Vec<ParseTree>) -> Result<Self, TreeError> {
        let label = label.into();
        if !valid_atom(&label) {
            return Err(TreeError::InvalidLabel(label));
        }
        if children.is_empty() {
            return Err(TreeError::EmptyNode { offset: 0 });
        }
        Ok(Self { label, children, token: None })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn children(&self) -> &[ParseTree] {
        &self.children
    }

    pub fn first_child(&self) -> Option<&ParseTree> {
        self.children.first()
    }

    pub fn token(&self) -> Option<&str> {
        self.token.as_deref()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Depth-first pre-order walk over every node, this one included.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }

    pub fn node_count(&self) -> usize {
        self.preorder().count()
    }

    pub fn leaf_count(&self) -> usize {
        self.preorder().filter(|n| n.is_leaf()).count()
    }

    /// Surface tokens left to right.
    pub fn tokens(&self) -> Vec<&str> {
        self.preorder().filter_map(|n| n.token()).collect()
    }

    fn write_canonical(&self, out: &mut String) {
        out.push('(');
        out.push_str(&self.label);
        if let Some(token) = &self.token {
            out.push(' ');
            out.push_str(token);
        }
        for child in &self.children {
            out.push(' ');
            child.write_canonical(out);
        }
        out.push(')');
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

impl FromStr for ParseTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ptb(s)
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a ParseTree>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a ParseTree;

    fn next(&mut self) -> Option<Self::Item> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom<'a> {
    Open,
    Close,
    Word(&'a str),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    /// Next atom with its starting byte offset.
    fn next(&mut self) -> Option<(usize, Atom<'a>)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let c = rest.chars().next()?;
        match c {
            '(' => {
                self.pos += 1;
                Some((start, Atom::Open))
            }
            ')' => {
                self.pos += 1;
                Some((start, Atom::Close))
            }
            _ => {
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(rest.len());
                self.pos += len;
                Some((start, Atom::Word(&rest[..len])))
            }
        }
    }
}

/// Parses one bracketed tree. The whole input must be consumed.
pub fn parse_ptb(text: &str) -> Result<ParseTree, TreeError> {
    let mut lexer = Lexer::new(text);
    let tree = match lexer.next() {
        None => return Err(TreeError::EmptyInput),
        Some((offset, Atom::Open)) => parse_node(&mut lexer, offset)?,
        Some((offset, Atom::Close)) => return Err(TreeError::UnbalancedParens { offset }),
        Some((offset, Atom::Word(w))) => {
            return Err(TreeError::UnexpectedToken { offset, token: w.to_string() })
        }
    };
    match lexer.next() {
        None => Ok(tree),
        Some((offset, Atom::Close)) => Err(TreeError::UnbalancedParens { offset }),
        Some((offset, _)) => Err(TreeError::TrailingContent { offset }),
    }
}

// Called just after an opening paren at `open`.
fn parse_node(lexer: &mut Lexer<'_>, open: usize) -> Result<ParseTree, TreeError> {
    let label = match lexer.next() {
        None => return Err(TreeError::UnbalancedParens { offset: open }),
        Some((_, Atom::Close)) => return Err(TreeError::EmptyNode { offset: open }),
        Some((_, Atom::Open)) => return Err(TreeError::MissingLabel { offset: open }),
        Some((_, Atom::Word(w))) => w.to_string(),
    };

    match lexer.next() {
        None => Err(TreeError::UnbalancedParens { offset: open }),
        Some((_, Atom::Close)) => Err(TreeError::EmptyNode { offset: open }),
        Some((_, Atom::Word(token))) => match lexer.next() {
            Some((_, Atom::Close)) => Ok(ParseTree { label, children: Vec::new(), token: Some(token.to_string()) }),
            None => Err(TreeError::UnbalancedParens { offset: open }),
            Some((offset, Atom::Open)) => {
                Err(TreeError::UnexpectedToken { offset, token: "(".to_string() })
            }
            Some((offset, Atom::Word(w))) => Err(TreeError::UnexpectedToken { offset, token: w.to_string() }),
        },
        Some((child_open, Atom::Open)) => {
            let mut children = vec![parse_node(lexer, child_open)?];
            loop {
                match lexer.next() {
                    None => return Err(TreeError::UnbalancedParens { offset: open }),
                    Some((_, Atom::Close)) => break,
                    Some((offset, Atom::Open)) => children.push(parse_node(lexer, offset)?),
                    Some((offset, Atom::Word(w))) => {
                        return Err(TreeError::UnexpectedToken { offset, token: w.to_string() })
                    }
                }
            }
            Ok(ParseTree { label, children, token: None })
        }
    }
}

/// Canonical single-space bracketed rendering.
pub fn serialize(tree: &ParseTree) -> String {
    let mut out = String::new();
    tree.write_canonical(&mut out);
    out
}

/// Pre-order node labels. A top-level `ROOT` wrapper is skipped; tokens never appear.
pub fn preorder_labels(tree: &ParseTree) -> Vec<&str> {
    let skip_root = tree.label == ROOT_LABEL && !tree.is_leaf();
    tree.preorder()
        .skip(usize::from(skip_root))
        .map(ParseTree::label)
        .collect()
}

/// Reads one tree per non-blank line. Errors carry the 1-based line number.
pub fn parse_lines(text: &str) -> Result<Vec<ParseTree>, (usize, TreeError)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| parse_ptb(line).map_err(|e| (i + 1, e)))
        .collect()
}
