//! Suffix automaton (DAWG) over byte symbols.
//!
//! Besides the usual distinct-factor counts, construction records for every
//! position `i` the length of the longest suffix of `x[..i]` that already
//! occurs in `x[..i-1]`. The first position where that length reaches `n` is
//! exactly the return time `r(n)`.

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct State {
    len: u32,
    link: u32,
    next: Vec<(u8, u32)>,
}

impl State {
    fn get(&self, c: u8) -> u32 {
        self.next
            .iter()
            .find_map(|&(k, v)| (k == c).then_some(v))
            .unwrap_or(NONE)
    }

    fn set(&mut self, c: u8, to: u32) {
        match self.next.iter_mut().find(|(k, _)| *k == c) {
            Some(edge) => edge.1 = to,
            None => self.next.push((c, to)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    last: u32,
    repeated_suffix: Vec<u32>,
}

impl SuffixAutomaton {
    pub fn build(word: &[u8]) -> Self {
        let mut sam = SuffixAutomaton {
            states: Vec::with_capacity(2 * word.len() + 1),
            last: 0,
            repeated_suffix: Vec::with_capacity(word.len()),
        };
        sam.states.push(State {
            len: 0,
            link: NONE,
            next: Vec::new(),
        });
        for &c in word {
            sam.push(c);
        }
        sam
    }

    /// Number of symbols consumed.
    pub fn len(&self) -> usize {
        self.repeated_suffix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.repeated_suffix.is_empty()
    }

    fn push(&mut self, c: u8) {
        let cur = self.states.len() as u32;
        let cur_len = self.states[self.last as usize].len + 1;
        self.states.push(State {
            len: cur_len,
            link: 0,
            next: Vec::new(),
        });
        let mut p = self.last;
        while p != NONE && self.states[p as usize].get(c) == NONE {
            self.states[p as usize].set(c, cur);
            p = self.states[p as usize].link;
        }
        if p == NONE {
            self.repeated_suffix.push(0);
        } else {
            self.repeated_suffix.push(self.states[p as usize].len + 1);
            let q = self.states[p as usize].get(c);
            if self.states[p as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut cloned = self.states[q as usize].clone();
                cloned.len = self.states[p as usize].len + 1;
                self.states.push(cloned);
                while p != NONE && self.states[p as usize].get(c) == q {
                    self.states[p as usize].set(c, clone);
                    p = self.states[p as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
            }
        }
        self.last = cur;
    }

    /// Distinct factor counts `p(1), .., p(n_max)` of the consumed word.
    pub fn factor_counts(&self, n_max: usize) -> Vec<usize> {
        // each state contributes one factor for every length in (len(link), len]
        let mut diff = vec![0i64; n_max + 2];
        for state in self.states.iter().skip(1) {
            let lo = self.states[state.link as usize].len as usize + 1;
            let hi = (state.len as usize).min(n_max);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut out = Vec::with_capacity(n_max);
        let mut acc = 0i64;
        for d in diff.iter().take(n_max + 1).skip(1) {
            acc += d;
            out.push(acc as usize);
        }
        out
    }

    /// Return times `r(1), .., r(n_max)` of the consumed word.
    pub fn return_times(&self, n_max: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n_max];
        let mut reached = 0usize;
        for (i, &ell) in self.repeated_suffix.iter().enumerate() {
            let ell = (ell as usize).min(n_max);
            while reached < ell {
                out[reached] = Some(i + 1);
                reached += 1;
            }
            if reached == n_max {
                break;
            }
        }
        out
    }

    /// Whether `pattern` is a factor of the consumed word.
    pub fn contains(&self, pattern: &[u8]) -> bool {
        let mut state = 0u32;
        for &c in pattern {
            state = self.states[state as usize].get(c);
            if state == NONE {
                return false;
            }
        }
        true
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }
}
