//! Deterministic character alignment primitives shared by the encoders.
//!
//! Both aligners fill a suffix cost table (`cost[i][j]` is the cheapest way
//! to turn `a[i..]` into `b[j..]`) and then walk it from the start of the
//! strings, taking the first optimal move in a fixed preference order. Ties
//! are therefore resolved at the leftmost position where they occur.

/// A single alignment column.
#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum AlignOp {
    Match(char),
    Replace {
        from: char,
        to: char,
    },
    /// Consume a source character.
    Delete(char),
    /// Produce a target character.
    Insert(char),
}

impl AlignOp {
    pub fn source_char(self) -> Option<char> {
        match self {
            AlignOp::Match(c) | AlignOp::Delete(c) => Some(c),
            AlignOp::Replace { from, .. } => Some(from),
            AlignOp::Insert(_) => None,
        }
    }

    pub fn target_char(self) -> Option<char> {
        match self {
            AlignOp::Match(c) | AlignOp::Insert(c) => Some(c),
            AlignOp::Replace { to, .. } => Some(to),
            AlignOp::Delete(_) => None,
        }
    }

    pub fn is_edit(self) -> bool {
        !matches!(self, AlignOp::Match(_))
    }
}

#[derive(Clone, Debug, Default, Eq, PartialEq)]
pub struct Alignment {
    pub ops: Vec<AlignOp>,
}

impl Alignment {
    /// Number of non-match columns.
    pub fn edit_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_edit()).count()
    }

    pub fn source(&self) -> String {
        self.ops.iter().filter_map(|op| op.source_char()).collect()
    }

    pub fn target(&self) -> String {
        self.ops.iter().filter_map(|op| op.target_char()).collect()
    }

    /// Replay the alignment over `a`, returning the target string, or `None`
    /// when the alignment was not computed for `a`.
    pub fn apply(&self, a: &[char]) -> Option<Vec<char>> {
        let mut rest = a.iter();
        let mut out = Vec::with_capacity(a.len());
        for &op in &self.ops {
            if let Some(c) = op.source_char() {
                if rest.next() != Some(&c) {
                    return None;
                }
            }
            out.extend(op.target_char());
        }
        if rest.next().is_some() {
            return None;
        }
        Some(out)
    }

    /// The same alignment read from the end of both strings.
    pub fn reversed(mut self) -> Self {
        self.ops.reverse();
        self
    }
}

/// Position and length of a longest common substring.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq)]
pub struct LcsResult {
    pub start_in_a: usize,
    pub start_in_b: usize,
    pub length: usize,
}

/// Longest common substring of `a` and `b`.
///
/// Among maximal spans the one starting leftmost in `a` wins, then leftmost
/// in `b`. Returns a zero-length result at `(0, 0)` when nothing is shared.
pub fn longest_common_substring(a: &[char], b: &[char]) -> LcsResult {
    let mut best = LcsResult::default();
    // run[j + 1]: length of the common run ending at a[i], b[j].
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb { prev[j] + 1 } else { 0 };
            let len = cur[j + 1];
            if len == 0 {
                continue;
            }
            let candidate = LcsResult {
                start_in_a: i + 1 - len,
                start_in_b: j + 1 - len,
                length: len,
            };
            if len > best.length
                || (len == best.length
                    && (candidate.start_in_a, candidate.start_in_b) < (best.start_in_a, best.start_in_b))
            {
                best = candidate;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

struct SuffixTable {
    cols: usize,
    cost: Vec<u32>,
}

impl SuffixTable {
    fn at(&self, i: usize, j: usize) -> u32 {
        self.cost[i * self.cols + j]
    }
}

fn suffix_table(
    a: &[char],
    b: &[char],
    delete: u32,
    insert: u32,
    diagonal: impl Fn(char, char) -> Option<u32>,
) -> SuffixTable {
    let (n, m) = (a.len(), b.len());
    let cols = m + 1;
    let mut cost = vec![0u32; (n + 1) * cols];
    for j in (0..m).rev() {
        cost[n * cols + j] = cost[n * cols + j + 1] + insert;
    }
    for i in (0..n).rev() {
        cost[i * cols + m] = cost[(i + 1) * cols + m] + delete;
        for j in (0..m).rev() {
            let mut best = cost[(i + 1) * cols + j] + delete;
            best = best.min(cost[i * cols + j + 1] + insert);
            if let Some(d) = diagonal(a[i], b[j]) {
                best = best.min(cost[(i + 1) * cols + j + 1] + d);
            }
            cost[i * cols + j] = best;
        }
    }
    SuffixTable { cols, cost }
}

/// Unit-cost Levenshtein alignment.
///
/// At equal cost the walk prefers the diagonal move (match or replace), then
/// deletion, then insertion.
pub fn levenshtein_align(a: &[char], b: &[char]) -> Alignment {
    let diag = |x: char, y: char| Some(u32::from(x != y));
    let table = suffix_table(a, b, 1, 1, diag);
    let (n, m) = (a.len(), b.len());
    let mut ops = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (0, 0);
    while i < n || j < m {
        let here = table.at(i, j);
        if i < n && j < m && diag(a[i], b[j]).unwrap() + table.at(i + 1, j + 1) == here {
            ops.push(if a[i] == b[j] {
                AlignOp::Match(a[i])
            } else {
                AlignOp::Replace { from: a[i], to: b[j] }
            });
            i += 1;
            j += 1;
        } else if i < n && 1 + table.at(i + 1, j) == here {
            ops.push(AlignOp::Delete(a[i]));
            i += 1;
        } else {
            ops.push(AlignOp::Insert(b[j]));
            j += 1;
        }
    }
    Alignment { ops }
}

/// Edit distance of `a` and `b` under unit costs.
pub fn levenshtein_distance(a: &[char], b: &[char]) -> usize {
    levenshtein_align(a, b).edit_count()
}

/// Costs for [`min_script_align`].
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub struct ScriptCosts {
    pub insert: u32,
    pub delete: u32,
    pub copy: u32,
}

/// Cheapest alignment using only copies, deletions and insertions.
///
/// Replacements are never emitted. At equal cost the walk prefers a copy,
/// then a deletion, then an insertion, so deletions precede insertions at
/// every alignment point.
pub fn min_script_align(a: &[char], b: &[char], costs: ScriptCosts) -> Alignment {
    let copy = costs.copy;
    let diag = move |x: char, y: char| (x == y).then_some(copy);
    let table = suffix_table(a, b, costs.delete, costs.insert, diag);
    let (n, m) = (a.len(), b.len());
    let mut ops = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0, 0);
    while i < n || j < m {
        let here = table.at(i, j);
        if i < n && j < m && a[i] == b[j] && copy + table.at(i + 1, j + 1) == here {
            ops.push(AlignOp::Match(a[i]));
            i += 1;
            j += 1;
        } else if i < n && costs.delete + table.at(i + 1, j) == here {
            ops.push(AlignOp::Delete(a[i]));
            i += 1;
        } else {
            ops.push(AlignOp::Insert(b[j]));
            j += 1;
        }
    }
    Alignment { ops }
}
