//! Branch and bound over subfamilies of `2^[n]`.
//!
//! Each node holds a partial family and the list of *alive* candidates: sets
//! after the branching point that can still be added without creating a
//! `(k+1)`-chain in any trace. The property is hereditary, so a candidate
//! that is not addable stays non-addable deeper in the subtree and is dropped
//! for good.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::symmetry::{root_representative, stabilizer_representative};

/// Outcome of one subproblem: the best size reached and every family of
/// that size found in it.
#[derive(Default)]
pub(crate) struct Partial {
    pub best: usize,
    pub families: Vec<Vec<u32>>,
    pub nodes: u64,
}

pub(crate) struct Outcome {
    pub best: usize,
    pub families: Vec<Vec<u32>>,
    pub nodes: u64,
    pub timed_out: bool,
}

pub(crate) struct Engine {
    n: usize,
    k: usize,
    ls: Vec<u32>,
    /// Symmetric chain of each mask; only set when `l >= k`.
    chain_of: Option<Vec<u16>>,
    chains: usize,
    symmetry: bool,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
}

/// A symmetric chain decomposition of `2^[n]`, built by the standard
/// doubling construction.
pub(crate) fn symmetric_chains(n: usize) -> Vec<Vec<u32>> {
    let mut chains: Vec<Vec<u32>> = vec![vec![0]];
    for i in 0..n {
        let bit = 1u32 << i;
        let mut next = Vec::with_capacity(chains.len() * 2);
        for c in chains {
            let mut longer = c.clone();
            longer.push(c[c.len() - 1] | bit);
            next.push(longer);
            if c.len() >= 2 {
                next.push(c[..c.len() - 1].iter().map(|m| m | bit).collect());
            }
        }
        chains = next;
    }
    chains
}

fn class_key(n: usize, m: u32) -> (usize, usize) {
    let p = m.count_ones() as usize;
    ((2 * p).abs_diff(n), p)
}

/// Per-trace bookkeeping for one partial family.
struct State<'a> {
    eng: &'a Engine,
    members: Vec<u32>,
    /// `count[i][t]`: members whose trace on `ls[i]` is `t`.
    count: Vec<Vec<u16>>,
    /// `ok[i][t]`: a new member with trace `t` on `ls[i]` keeps that trace
    /// k-Sperner.
    ok: Vec<Vec<bool>>,
    down: Vec<u8>,
    up: Vec<u8>,
}

impl<'a> State<'a> {
    fn new(eng: &'a Engine) -> Self {
        let size = 1usize << eng.n;
        State {
            eng,
            members: Vec::new(),
            count: vec![vec![0; size]; eng.ls.len()],
            ok: vec![vec![true; size]; eng.ls.len()],
            down: vec![0; size],
            up: vec![0; size],
        }
    }

    fn refresh(&mut self, i: usize) {
        let l = self.eng.ls[i];
        let k = self.eng.k;
        let count = &self.count[i];
        let (down, up) = (&mut self.down, &mut self.up);
        // down[t]: longest chain of present traces inside t; ascending order.
        let mut t = 0u32;
        loop {
            let mut best = 0;
            let mut rest = t;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                rest ^= e;
                best = best.max(down[(t ^ e) as usize]);
            }
            down[t as usize] = best + (count[t as usize] > 0) as u8;
            if t == l {
                break;
            }
            t = t.wrapping_sub(l) & l;
        }
        // up[t]: longest chain of present traces containing t; descending.
        let mut t = l;
        loop {
            let mut best = 0;
            let mut rest = l & !t;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                rest ^= e;
                best = best.max(up[(t | e) as usize]);
            }
            up[t as usize] = best + (count[t as usize] > 0) as u8;
            if t == 0 {
                break;
            }
            t = (t - 1) & l;
        }
        let ok = &mut self.ok[i];
        let mut t = 0u32;
        loop {
            let ti = t as usize;
            ok[ti] = if count[ti] > 0 {
                true
            } else {
                let mut below = 0;
                let mut rest = t;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    rest ^= e;
                    below = below.max(down[(t ^ e) as usize]);
                }
                let mut above = 0;
                let mut rest = l & !t;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    rest ^= e;
                    above = above.max(up[(t | e) as usize]);
                }
                below as usize + above as usize + 1 <= k
            };
            if t == l {
                break;
            }
            t = t.wrapping_sub(l) & l;
        }
    }

    fn addable(&self, c: u32) -> bool {
        self.eng
            .ls
            .iter()
            .zip(&self.ok)
            .all(|(&l, ok)| ok[(c & l) as usize])
    }

    fn add(&mut self, c: u32) {
        self.members.push(c);
        for i in 0..self.eng.ls.len() {
            let t = (c & self.eng.ls[i]) as usize;
            self.count[i][t] += 1;
            if self.count[i][t] == 1 {
                self.refresh(i);
            }
        }
    }

    fn remove(&mut self, c: u32) {
        let popped = self.members.pop();
        debug_assert_eq!(popped, Some(c));
        for i in 0..self.eng.ls.len() {
            let t = (c & self.eng.ls[i]) as usize;
            self.count[i][t] -= 1;
            if self.count[i][t] == 0 {
                self.refresh(i);
            }
        }
    }
}

/// A subtree root: the first one or two members are fixed, and `alive`
/// lists the remaining candidates in branching order.
struct Task {
    fixed: Vec<u32>,
    alive: Vec<u32>,
}

impl Engine {
    pub(crate) fn new(
        n: usize,
        k: usize,
        l: usize,
        symmetry: bool,
        deadline: Option<Instant>,
    ) -> Self {
        let ls: Vec<u32> = (0..1u32 << n)
            .filter(|m| m.count_ones() as usize == l)
            .collect();
        let (chain_of, chains) = if l >= k {
            let sc = symmetric_chains(n);
            let mut of = vec![0u16; 1 << n];
            for (i, c) in sc.iter().enumerate() {
                for &m in c {
                    of[m as usize] = i as u16;
                }
            }
            (Some(of), sc.len())
        } else {
            (None, 0)
        };
        Engine {
            n,
            k,
            ls,
            chain_of,
            chains,
            symmetry,
            deadline,
            timed_out: AtomicBool::new(false),
        }
    }

    /// Candidates in branching order: middle layers first, then by size,
    /// then by value.
    fn candidates(&self) -> Vec<u32> {
        let mut all: Vec<u32> = (0..1u32 << self.n).collect();
        all.sort_by_key(|&m| (class_key(self.n, m), m));
        all
    }

    fn tasks(&self) -> Vec<Task> {
        let order = self.candidates();
        let mut tasks = Vec::new();
        for (i, &c0) in order.iter().enumerate() {
            let p = c0.count_ones() as usize;
            if self.symmetry && c0 != root_representative(p) {
                continue;
            }
            // Inside the subtree rooted at c0, orbits of Stab(c0) on each
            // layer are made contiguous so their representatives come first.
            let mut rest: Vec<u32> = order[i + 1..].to_vec();
            rest.sort_by_key(|&m| {
                (class_key(self.n, m), std::cmp::Reverse((m & c0).count_ones()), m)
            });
            let mut state = State::new(self);
            state.add(c0);
            let mut any = false;
            for (j, &c1) in rest.iter().enumerate() {
                if !state.addable(c1) {
                    continue;
                }
                any = true;
                if self.symmetry && c1 != stabilizer_representative(p, c1) {
                    continue;
                }
                state.add(c1);
                let alive = rest[j + 1..]
                    .iter()
                    .copied()
                    .filter(|&c| state.addable(c))
                    .collect();
                state.remove(c1);
                tasks.push(Task {
                    fixed: vec![c0, c1],
                    alive,
                });
            }
            if !any {
                tasks.push(Task {
                    fixed: vec![c0],
                    alive: Vec::new(),
                });
            }
        }
        tasks
    }

    fn bound(&self, cur: &[u32], alive: &[u32]) -> usize {
        let naive = cur.len() + alive.len();
        let Some(chain_of) = &self.chain_of else {
            return naive;
        };
        let mut cnt = vec![0u8; self.chains];
        for &m in cur.iter().chain(alive) {
            cnt[chain_of[m as usize] as usize] += 1;
        }
        let scd: usize = cnt.iter().map(|&c| (c as usize).min(self.k)).sum();
        scd.min(naive)
    }

    fn expired(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.timed_out.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn dfs(&self, state: &mut State, alive: &[u32], out: &mut Partial) {
        out.nodes += 1;
        if out.nodes % 1024 == 0 && self.expired() {
            return;
        }
        if alive.is_empty() {
            let size = state.members.len();
            if size > out.best {
                out.best = size;
                out.families.clear();
            }
            if size == out.best {
                let mut fam = state.members.clone();
                fam.sort_unstable();
                out.families.push(fam);
            }
            return;
        }
        if self.bound(&state.members, alive) < out.best {
            return;
        }
        let c = alive[0];
        state.add(c);
        let next: Vec<u32> = alive[1..]
            .iter()
            .copied()
            .filter(|&x| state.addable(x))
            .collect();
        self.dfs(state, &next, out);
        state.remove(c);
        self.dfs(state, &alive[1..], out);
    }

    fn run_task(&self, task: &Task, floor: usize) -> Partial {
        if self.expired() {
            return Partial::default();
        }
        let mut state = State::new(self);
        for &c in &task.fixed {
            state.add(c);
        }
        let mut out = Partial {
            best: floor,
            ..Partial::default()
        };
        self.dfs(&mut state, &task.alive, &mut out);
        out
    }

    /// Every family of maximum size at least `floor`, up to the symmetry
    /// restriction. Subtrees run in parallel with independent incumbents,
    /// so node counts and results do not depend on the thread count.
    pub(crate) fn solve(&self, floor: usize) -> Outcome {
        let tasks = self.tasks();
        let parts: Vec<Partial> = tasks
            .par_iter()
            .map(|t| self.run_task(t, floor))
            .collect();
        let best = parts
            .iter()
            .filter(|p| !p.families.is_empty())
            .map(|p| p.best)
            .max()
            .unwrap_or(0);
        let mut families = Vec::new();
        let mut nodes = 0;
        for p in parts {
            nodes += p.nodes;
            if p.best == best && !p.families.is_empty() {
                families.extend(p.families);
            }
        }
        Outcome {
            best,
            families,
            nodes,
            timed_out: self.timed_out.load(Ordering::Relaxed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_chain_decomposition() {
        for n in 1..=6 {
            let chains = symmetric_chains(n);
            let mut seen = vec![false; 1 << n];
            for c in &chains {
                for w in c.windows(2) {
                    assert_eq!(w[0] & !w[1], 0);
                    assert_eq!((w[1] ^ w[0]).count_ones(), 1);
                }
                let lo = c[0].count_ones() as usize;
                let hi = c[c.len() - 1].count_ones() as usize;
                assert_eq!(lo + hi, n);
                for &m in c {
                    assert!(!seen[m as usize]);
                    seen[m as usize] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
            assert_eq!(chains.len(), usize::try_from(crate::constructions::binomial(n, n / 2)).unwrap());
        }
    }

    #[test]
    fn small_values() {
        let e = Engine::new(3, 1, 3, true, None);
        assert_eq!(e.solve(0).best, 3);
        let e = Engine::new(4, 2, 3, false, None);
        let out = e.solve(0);
        assert_eq!(out.best, 6);
        assert_eq!(out.families, vec![vec![3, 5, 6, 9, 10, 12]]);
    }
}
