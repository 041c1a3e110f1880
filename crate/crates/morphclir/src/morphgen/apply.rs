use std::collections::BTreeSet;

use crate::rules::{Action, EditOp, Position, TransformationRule};

/// Every string obtainable by executing the rule's actions left to right.
///
/// Begin binds to index 0. End binds to the slot after the last character
/// for an insertion and to the last character for a deletion. Middle
/// enumerates every strictly interior index. A deletion whose character is
/// not at the bound index kills that branch. The empty rule returns `{w}`.
pub fn apply_rule(w: &str, rule: &TransformationRule) -> BTreeSet<String> {
    let mut current: BTreeSet<Vec<char>> = BTreeSet::from([w.chars().collect()]);
    for action in &rule.actions {
        let mut next = BTreeSet::new();
        for s in &current {
            apply_action(s, action, &mut next);
        }
        if next.is_empty() {
            return BTreeSet::new();
        }
        current = next;
    }
    current.into_iter().map(|c| c.into_iter().collect()).collect()
}

fn apply_action(s: &[char], action: &Action, out: &mut BTreeSet<Vec<char>>) {
    let len = s.len();
    match action.op {
        EditOp::Insert => {
            let slots: Vec<usize> = match action.pos {
                Position::Begin => vec![0],
                Position::End => vec![len],
                Position::Middle => (1..len).collect(),
            };
            for i in slots {
                let mut v = Vec::with_capacity(len + 1);
                v.extend_from_slice(&s[..i]);
                v.push(action.ch);
                v.extend_from_slice(&s[i..]);
                out.insert(v);
            }
        }
        EditOp::Delete => {
            if len == 0 {
                return;
            }
            let slots: Vec<usize> = match action.pos {
                Position::Begin => vec![0],
                Position::End => vec![len - 1],
                Position::Middle => (1..len.saturating_sub(1)).collect(),
            };
            for i in slots.into_iter().filter(|&i| s[i] == action.ch) {
                let mut v = Vec::with_capacity(len - 1);
                v.extend_from_slice(&s[..i]);
                v.extend_from_slice(&s[i + 1..]);
                out.insert(v);
            }
        }
    }
}
