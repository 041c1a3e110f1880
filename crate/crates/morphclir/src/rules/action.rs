use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Edit operation of an action. Substitution is not an operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EditOp {
    Insert,
    Delete,
}

impl EditOp {
    pub fn flipped(self) -> Self {
        match self {
            EditOp::Insert => EditOp::Delete,
            EditOp::Delete => EditOp::Insert,
        }
    }

    fn code(self) -> char {
        match self {
            EditOp::Insert => 'i',
            EditOp::Delete => 'd',
        }
    }
}

/// Coarse location of an action in the word being rewritten.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Begin,
    Middle,
    End,
}

impl Position {
    fn code(self) -> char {
        match self {
            Position::Begin => 'b',
            Position::Middle => 'm',
            Position::End => 'e',
        }
    }
}

/// One insertion or deletion of a single character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    pub op: EditOp,
    pub pos: Position,
    pub ch: char,
}

impl Action {
    pub const fn new(op: EditOp, pos: Position, ch: char) -> Self {
        Self { op, pos, ch }
    }

    pub const fn insert(pos: Position, ch: char) -> Self {
        Self::new(EditOp::Insert, pos, ch)
    }

    pub const fn delete(pos: Position, ch: char) -> Self {
        Self::new(EditOp::Delete, pos, ch)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.op.code(), self.pos.code(), self.ch)
    }
}

impl FromStr for Action {
    type Err = Error;

    /// Parses `op:pos:char`, e.g. `i:m:a`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("malformed action `{s}`, expected op:pos:char"));
        let mut parts = s.splitn(3, ':');
        let op = match parts.next() {
            Some("i") => EditOp::Insert,
            Some("d") => EditOp::Delete,
            _ => return Err(bad()),
        };
        let pos = match parts.next() {
            Some("b") => Position::Begin,
            Some("m") => Position::Middle,
            Some("e") => Position::End,
            _ => return Err(bad()),
        };
        let mut chars = parts.next().ok_or_else(bad)?.chars();
        match (chars.next(), chars.next()) {
            (Some(ch), None) => Ok(Action::new(op, pos, ch)),
            _ => Err(bad()),
        }
    }
}

/// Ordered edit actions that rewrite a word into one of its variants,
/// qualified by the part-of-speech tag of the source word.
///
/// Equality and hashing cover both the actions and the tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransformationRule {
    pub actions: Vec<Action>,
    pub pos_tag: String,
}

impl TransformationRule {
    pub fn new(actions: Vec<Action>, pos_tag: impl Into<String>) -> Self {
        Self {
            actions,
            pos_tag: pos_tag.into(),
        }
    }

    /// Number of actions, which equals the indel distance it bridges.
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Actions in the `op:pos:char|op:pos:char` file encoding.
    pub fn actions_key(&self) -> String {
        self.actions.iter().map(Action::to_string).collect::<Vec<_>>().join("|")
    }

    /// Inverse of [`actions_key`](Self::actions_key).
    pub fn parse_actions(s: &str) -> Result<Vec<Action>> {
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split('|').map(str::parse).collect()
    }
}

impl fmt::Display for TransformationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.actions_key(), self.pos_tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding() {
        let rule = TransformationRule::new(
            vec![
                Action::insert(Position::Middle, 'a'),
                Action::delete(Position::End, 'h'),
            ],
            "N_SING",
        );
        assert_eq!(rule.actions_key(), "i:m:a|d:e:h");
        assert_eq!(TransformationRule::parse_actions("i:m:a|d:e:h").unwrap(), rule.actions);
        assert_eq!(rule.to_string(), "i:m:a|d:e:h@N_SING");
    }

    #[test]
    fn rejects_malformed_actions() {
        for bad in ["x:m:a", "i:q:a", "i:m:", "i:m:ab", "i:m"] {
            assert!(bad.parse::<Action>().is_err(), "{bad}");
        }
        // the character field may itself be ':'
        assert_eq!("d:b::".parse::<Action>().unwrap(), Action::delete(Position::Begin, ':'));
    }

    #[test]
    fn tag_participates_in_equality() {
        let a = TransformationRule::new(vec![Action::insert(Position::End, 's')], "N");
        let b = TransformationRule::new(vec![Action::insert(Position::End, 's')], "V");
        assert_ne!(a, b);
    }
}
