//! Substitution-free minimum edit distance and rule extraction.
//!
//! Insertions and deletions cost 1 and substitution is never taken, so the
//! distance between `w` and `v` is `|w| + |v| - 2 * LCS(w, v)`.

use super::action::{Action, EditOp, Position, TransformationRule};
use crate::error::{Error, Result};

/// Minimum number of single-character insertions and deletions turning `w` into `v`.
pub fn indel_distance(w: &str, v: &str) -> usize {
    let a: Vec<char> = w.chars().collect();
    let b: Vec<char> = v.chars().collect();
    indel_distance_chars(&a, &b)
}

pub(crate) fn indel_distance_chars(a: &[char], b: &[char]) -> usize {
    // rolling row over b, D[i][j] = distance(a[..i], b[..j])
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            cur[j] = if a[i - 1] == b[j - 1] {
                prev[j - 1]
            } else {
                1 + prev[j].min(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Indel distance if it is at most `k`, computed on a band of width `k`
/// around the diagonal and abandoned as soon as a row exceeds `k`.
pub fn bounded_indel_distance(a: &[char], b: &[char], k: usize) -> Option<usize> {
    let (n, m) = (a.len(), b.len());
    if n.abs_diff(m) > k {
        return None;
    }
    const FAR: usize = usize::MAX / 2;
    let mut prev = vec![FAR; m + 1];
    let mut cur = vec![FAR; m + 1];
    for (j, cell) in prev.iter_mut().enumerate().take(k.min(m) + 1) {
        *cell = j;
    }
    for i in 1..=n {
        let lo = i.saturating_sub(k);
        let hi = (i + k).min(m);
        cur.iter_mut().for_each(|c| *c = FAR);
        let mut row_min = FAR;
        for j in lo..=hi {
            let v = if j == 0 {
                i
            } else if a[i - 1] == b[j - 1] {
                prev[j - 1]
            } else {
                1 + prev[j].min(cur[j - 1])
            };
            cur[j] = v;
            row_min = row_min.min(v);
        }
        if row_min > k {
            return None;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let d = prev[m];
    (d <= k).then_some(d)
}

/// Extracts the transformation rule rewriting `w` into `v`.
///
/// The optimal alignment is walked from the start of both strings. Where
/// several steps keep the path optimal, a match is taken first, then a
/// deletion from `w`, then an insertion from `v`. Each deletion or
/// insertion becomes one action, positioned relative to the intermediate
/// string at that point of the walk (already-produced prefix of `v`
/// followed by the untouched rest of `w`):
///
/// * index 0 is [`Position::Begin`];
/// * an insertion after the last character, or a deletion of the last
///   character, is [`Position::End`];
/// * anything else is [`Position::Middle`].
///
/// Replaying the actions left to right with
/// [`apply_rule`](crate::morphgen::apply_rule) therefore always reproduces `v`.
pub fn extract_rule(w: &str, v: &str, pos_tag: &str) -> Result<TransformationRule> {
    let a: Vec<char> = w.chars().collect();
    let b: Vec<char> = v.chars().collect();
    extract_rule_chars(&a, &b, pos_tag).ok_or_else(|| Error::EmptyRule(w.to_string()))
}

pub(crate) fn extract_rule_chars(a: &[char], b: &[char], pos_tag: &str) -> Option<TransformationRule> {
    let (n, m) = (a.len(), b.len());
    let width = m + 1;
    // suffix table: s[x][y] = distance(a[x..], b[y..])
    let mut s = vec![0usize; (n + 1) * width];
    for x in (0..=n).rev() {
        for y in (0..=m).rev() {
            s[x * width + y] = if x == n {
                m - y
            } else if y == m {
                n - x
            } else if a[x] == b[y] {
                s[(x + 1) * width + y + 1]
            } else {
                1 + s[(x + 1) * width + y].min(s[x * width + y + 1])
            };
        }
    }
    if s[0] == 0 {
        return None;
    }

    let mut actions = Vec::with_capacity(s[0]);
    let (mut x, mut y) = (0usize, 0usize);
    while x < n || y < m {
        let here = s[x * width + y];
        if x < n && y < m && a[x] == b[y] && here == s[(x + 1) * width + y + 1] {
            x += 1;
            y += 1;
        } else if x < n && here == 1 + s[(x + 1) * width + y] {
            let pos = if y == 0 {
                Position::Begin
            } else if x + 1 == n {
                Position::End
            } else {
                Position::Middle
            };
            actions.push(Action::new(EditOp::Delete, pos, a[x]));
            x += 1;
        } else {
            let pos = if y == 0 {
                Position::Begin
            } else if x == n {
                Position::End
            } else {
                Position::Middle
            };
            actions.push(Action::new(EditOp::Insert, pos, b[y]));
            y += 1;
        }
    }
    Some(TransformationRule::new(actions, pos_tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Position::*;

    fn actions(w: &str, v: &str) -> Vec<Action> {
        extract_rule(w, v, "UNK").unwrap().actions
    }

    #[test]
    fn distances() {
        assert_eq!(indel_distance("abc", "abc"), 0);
        assert_eq!(indel_distance("jzirh", "jzair"), 2);
        assert_eq!(indel_distance("", "ab"), 2);
        assert_eq!(indel_distance("break", "broke"), 4);
    }

    #[test]
    fn bounded_agrees_or_abstains() {
        let pairs = [("break", "broke"), ("", "ab"), ("abcdef", "ab"), ("kitten", "sitting")];
        for (w, v) in pairs {
            let a: Vec<char> = w.chars().collect();
            let b: Vec<char> = v.chars().collect();
            let full = indel_distance(w, v);
            for k in 0..8 {
                let got = bounded_indel_distance(&a, &b, k);
                assert_eq!(got, (full <= k).then_some(full), "{w} {v} k={k}");
            }
        }
    }

    #[test]
    fn suffix_insertion() {
        assert_eq!(actions("jhangrd", "jhangrdi"), vec![Action::insert(End, 'i')]);
        assert_eq!(
            actions("jhangrd", "jhangrdan"),
            vec![Action::insert(End, 'a'), Action::insert(End, 'n')]
        );
    }

    #[test]
    fn infix_insertion() {
        assert_eq!(actions("ksart", "ksarat"), vec![Action::insert(Middle, 'a')]);
    }

    #[test]
    fn prefix_and_final_deletion() {
        assert_eq!(
            actions("shabe", "ashab"),
            vec![Action::insert(Begin, 'a'), Action::delete(End, 'e')]
        );
        assert_eq!(
            actions("jzirh", "jzair"),
            vec![Action::insert(Middle, 'a'), Action::delete(End, 'h')]
        );
    }

    #[test]
    fn swap_prefers_deletion_first() {
        assert_eq!(
            actions("ab", "ba"),
            vec![Action::delete(Begin, 'a'), Action::insert(End, 'a')]
        );
    }

    #[test]
    fn identical_strings_have_no_rule() {
        assert!(matches!(extract_rule("abc", "abc", "N"), Err(Error::EmptyRule(_))));
    }

    #[test]
    fn carries_source_tag() {
        let r = extract_rule("jhangrd", "jhangrdi", "N_SING").unwrap();
        assert_eq!(r.pos_tag, "N_SING");
    }

    #[test]
    fn from_and_to_empty() {
        assert_eq!(
            actions("", "ab"),
            vec![Action::insert(Begin, 'a'), Action::insert(End, 'b')]
        );
        assert_eq!(
            actions("ab", ""),
            vec![Action::delete(Begin, 'a'), Action::delete(Begin, 'b')]
        );
    }
}
