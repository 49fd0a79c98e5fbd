use std::collections::{BTreeSet, HashMap, VecDeque};

use origin_automata::Word;
use origin_transducer::{Class, Dir, Read, TwoWayTransducer};

/// A set of U-pairs `(q, q')`.
pub type PairSet = BTreeSet<(usize, usize)>;

/// The transitions of a transducer that may output the empty word, which
/// are the only ones lazy U-turns can use.
#[derive(Clone, Debug)]
pub struct UTurnRules<'a> {
    t: &'a TwoWayTransducer,
    silent: HashMap<(usize, Read), Vec<(usize, Dir)>>,
}

impl<'a> UTurnRules<'a> {
    pub fn new(t: &'a TwoWayTransducer) -> Self {
        let mut silent: HashMap<(usize, Read), Vec<(usize, Dir)>> = HashMap::new();
        for tr in t.transitions() {
            if tr.output.accepts_indices(&[]) {
                silent.entry((tr.from, tr.read.clone())).or_default().push((tr.to, tr.dir));
            }
        }
        UTurnRules { t, silent }
    }

    pub fn transducer(&self) -> &'a TwoWayTransducer {
        self.t
    }

    fn silent_moves(&self, q: usize, read: &Read) -> &[(usize, Dir)] {
        self.silent.get(&(q, read.clone())).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Left U-pairs at position `c + 1` from the cell `c` read by `read` and
    /// the left U-pairs at position `c`.
    ///
    /// A pair is found by chaining silent leftward moves on the cell through
    /// the pairs at `c` until a silent rightward move crosses the boundary.
    pub fn left_step(&self, read: &Read, prev: &PairSet) -> PairSet {
        let mut out = PairSet::new();
        for q in 0..self.t.num_states() {
            if self.t.class(q) != Class::L {
                continue;
            }
            for end in self.chain(q, read, prev, Dir::Left) {
                out.insert((q, end));
            }
        }
        out
    }

    /// Right U-pairs at position `c` from the cell `c` read by `read` and the
    /// right U-pairs at position `c + 1`.
    pub fn right_step(&self, read: &Read, next: &PairSet) -> PairSet {
        let mut out = PairSet::new();
        for q in 0..self.t.num_states() {
            if self.t.class(q) != Class::R {
                continue;
            }
            for end in self.chain(q, read, next, Dir::Right) {
                out.insert((q, end));
            }
        }
        out
    }

    /// States reached by leaving the cell in the direction opposite to
    /// `inward`, after any number of silent moves in direction `inward`
    /// each followed by a pair of `pairs`.
    fn chain(&self, start: usize, read: &Read, pairs: &PairSet, inward: Dir) -> BTreeSet<usize> {
        let mut ends = BTreeSet::new();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, dir) in self.silent_moves(x, read) {
                if dir != inward {
                    ends.insert(y);
                    continue;
                }
                for &(_, z) in pairs.range((y, 0)..=(y, usize::MAX)) {
                    if seen.insert(z) {
                        queue.push_back(z);
                    }
                }
            }
        }
        ends
    }

    /// Left U-pairs at position 1 (they can only bounce off the start marker).
    pub fn left_base(&self) -> PairSet {
        self.left_step(&Read::Start, &PairSet::new())
    }

    /// Right U-pairs at the last position (they can only bounce off the end marker).
    pub fn right_base(&self) -> PairSet {
        self.right_step(&Read::End, &PairSet::new())
    }
}

fn read_at(u: &Word, c: usize) -> Read {
    if c == 0 {
        Read::Start
    } else if c == u.len() + 1 {
        Read::End
    } else {
        Read::Letter(u[c - 1].clone())
    }
}

/// Left U-pairs of `t` on `u`, indexed by position `1..=|u|+1`; entry 0 is
/// always empty.
pub fn left_upairs(t: &TwoWayTransducer, u: &Word) -> Vec<PairSet> {
    let rules = UTurnRules::new(t);
    let mut out = vec![PairSet::new(); u.len() + 2];
    for i in 1..=u.len() + 1 {
        out[i] = rules.left_step(&read_at(u, i - 1), &out[i - 1]);
    }
    out
}

/// Right U-pairs of `t` on `u`, indexed by position `1..=|u|+1`; entry 0 is
/// always empty.
pub fn right_upairs(t: &TwoWayTransducer, u: &Word) -> Vec<PairSet> {
    let rules = UTurnRules::new(t);
    let n = u.len();
    let mut out = vec![PairSet::new(); n + 2];
    out[n + 1] = rules.right_base();
    for i in (1..=n).rev() {
        out[i] = rules.right_step(&read_at(u, i), &out[i + 1]);
    }
    out
}
