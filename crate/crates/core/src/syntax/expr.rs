//! Owned expression trees, detached from any source unit.
//!
//! Resolved values, bindings and template fragments are built and compared as
//! `Expr`s and printed back to Java with [`Expr::to_java`].

use std::fmt;

use super::parser::parse_expression;
use super::tree::{NodeId, NodeKind, SourceUnit};
use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Literal(String),
    Name(String),
    Field {
        target: Box<Expr>,
        name: String,
    },
    Call {
        receiver: Option<Box<Expr>>,
        name: String,
        args: Vec<Expr>,
    },
    New {
        ty: String,
        args: Vec<Expr>,
    },
    Binary {
        op: String,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Paren(Box<Expr>),
    /// Text of a construct outside the modelled subset, kept verbatim.
    Opaque(String),
}

impl Expr {
    pub fn name(s: impl Into<String>) -> Expr {
        Expr::Name(s.into())
    }

    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let unit = parse_expression(text.trim())?;
        Ok(Expr::from_node(&unit, unit.children(unit.root())[0]))
    }

    /// Lower a parsed expression node. Assignments become opaque text.
    pub fn from_node(unit: &SourceUnit, id: NodeId) -> Expr {
        let child = |i: usize| Expr::from_node(unit, unit.children(id)[i]);
        match unit.kind(id) {
            NodeKind::Literal(_) => Expr::Literal(unit.text_of(id).to_string()),
            NodeKind::NameExpr { name } => Expr::Name(name.clone()),
            NodeKind::FieldAccess { name } => Expr::Field { target: Box::new(child(0)), name: name.text.clone() },
            NodeKind::MethodInvocation { name, has_receiver } => {
                let receiver = has_receiver.then(|| Box::new(child(0)));
                let args = unit.invocation_args(id).iter().map(|a| Expr::from_node(unit, *a)).collect();
                Expr::Call { receiver, name: name.text.clone(), args }
            }
            NodeKind::ObjectCreation { ty } => {
                Expr::New { ty: ty.text.clone(), args: unit.children(id).iter().map(|a| Expr::from_node(unit, *a)).collect() }
            }
            NodeKind::BinaryExpr { op } => Expr::Binary { op: op.clone(), lhs: Box::new(child(0)), rhs: Box::new(child(1)) },
            NodeKind::Paren => Expr::Paren(Box::new(child(0))),
            _ => Expr::Opaque(unit.text_of(id).to_string()),
        }
    }

    pub fn to_java(&self) -> String {
        self.to_string()
    }

    /// Dotted text if this is a chain of names (`a.b.C`).
    pub fn qualified_name(&self) -> Option<String> {
        match self {
            Expr::Name(n) => Some(n.clone()),
            Expr::Field { target, name } => target.qualified_name().map(|t| format!("{t}.{name}")),
            _ => None,
        }
    }

    /// Leftmost name of a field-access chain.
    pub fn root_name(&self) -> Option<&str> {
        match self {
            Expr::Name(n) => Some(n),
            Expr::Field { target, .. } => target.root_name(),
            _ => None,
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Expr::Binary { .. })
    }

    /// Literals, names, field chains, `this`, and parenthesized or binary
    /// combinations of those. Evaluating a pure expression has no side effects.
    pub fn is_pure(&self) -> bool {
        match self {
            Expr::Literal(_) | Expr::Name(_) => true,
            Expr::Field { target, .. } => target.is_pure(),
            Expr::Paren(e) => e.is_pure(),
            Expr::Binary { lhs, rhs, .. } => lhs.is_pure() && rhs.is_pure(),
            _ => false,
        }
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Literal(_) | Expr::Name(_) | Expr::Opaque(_) => Vec::new(),
            Expr::Field { target, .. } => vec![target],
            Expr::Call { receiver, args, .. } => receiver.iter().map(|r| &**r).chain(args.iter()).collect(),
            Expr::New { args, .. } => args.iter().collect(),
            Expr::Binary { lhs, rhs, .. } => vec![lhs, rhs],
            Expr::Paren(e) => vec![e],
        }
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Free variable names: `Name` nodes, including roots of field chains.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Name(n) = e {
                out.push(n.as_str());
            }
        });
        out
    }

    /// Rebuild bottom-up, letting `f` replace any node. `f` sees nodes whose
    /// children have already been rewritten.
    pub fn rewrite(self, f: &mut impl FnMut(Expr) -> Expr) -> Expr {
        let e = match self {
            Expr::Field { target, name } => Expr::Field { target: Box::new(target.rewrite(f)), name },
            Expr::Call { receiver, name, args } => Expr::Call {
                receiver: receiver.map(|r| Box::new(r.rewrite(f))),
                name,
                args: args.into_iter().map(|a| a.rewrite(f)).collect(),
            },
            Expr::New { ty, args } => Expr::New { ty, args: args.into_iter().map(|a| a.rewrite(f)).collect() },
            Expr::Binary { op, lhs, rhs } => Expr::Binary { op, lhs: Box::new(lhs.rewrite(f)), rhs: Box::new(rhs.rewrite(f)) },
            Expr::Paren(e) => Expr::Paren(Box::new(e.rewrite(f))),
            leaf => leaf,
        };
        f(e)
    }

    /// Replace maximal subtrees for which `f` returns a replacement (top-down).
    pub fn replace_subtrees(self, f: &mut impl FnMut(&Expr) -> Option<Expr>) -> Expr {
        if let Some(r) = f(&self) {
            return r;
        }
        match self {
            Expr::Field { target, name } => Expr::Field { target: Box::new(target.replace_subtrees(f)), name },
            Expr::Call { receiver, name, args } => Expr::Call {
                receiver: receiver.map(|r| Box::new(r.replace_subtrees(f))),
                name,
                args: args.into_iter().map(|a| a.replace_subtrees(f)).collect(),
            },
            Expr::New { ty, args } => Expr::New { ty, args: args.into_iter().map(|a| a.replace_subtrees(f)).collect() },
            Expr::Binary { op, lhs, rhs } => {
                Expr::Binary { op, lhs: Box::new(lhs.replace_subtrees(f)), rhs: Box::new(rhs.replace_subtrees(f)) }
            }
            Expr::Paren(e) => Expr::Paren(Box::new(e.replace_subtrees(f))),
            leaf => leaf,
        }
    }

    /// Wrap in parentheses if this is a binary expression.
    pub fn parenthesized_if_binary(self) -> Expr {
        if self.is_binary() {
            Expr::Paren(Box::new(self))
        } else {
            self
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Expr]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(s) | Expr::Name(s) | Expr::Opaque(s) => f.write_str(s),
            Expr::Field { target, name } => write!(f, "{target}.{name}"),
            Expr::Call { receiver, name, args } => {
                if let Some(r) = receiver {
                    write!(f, "{r}.")?;
                }
                f.write_str(name)?;
                write_args(f, args)
            }
            Expr::New { ty, args } => {
                write!(f, "new {ty}")?;
                write_args(f, args)
            }
            Expr::Binary { op, lhs, rhs } => write!(f, "{lhs} {op} {rhs}"),
            Expr::Paren(e) => write!(f, "({e})"),
        }
    }
}
