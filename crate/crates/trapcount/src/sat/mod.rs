//! A small CDCL SAT solver with projected model enumeration and XOR
//! constraints.
//!
//! Completely deterministic: branching picks the unassigned variable of
//! highest activity (ties by lowest index) with saved phases, restarts follow
//! the Luby sequence, and no randomness enters anywhere, so identical input
//! produces identical runs. An optional conflict budget turns runaway
//! searches into a distinct error instead of an UNSAT verdict.
//!
//! Literal encoding: internal variable v (0-based) has positive literal
//! `v << 1` and negative literal `v << 1 | 1`. The public interface speaks
//! DIMACS: nonzero i32, 1-based.

pub mod dimacs;

use crate::encode::cnf::CnfFormula;
use crate::error::{Error, Result};

const NO_REASON: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LBool {
    True,
    False,
    Undef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// Model indexed by 0-based variable; external variable v is `model[v-1]`.
    Sat(Vec<bool>),
    Unsat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectedCount {
    /// Full enumeration finished below the bound.
    Exact(u64),
    /// At least this many projected models exist; enumeration stopped early.
    AtLeast(u64),
}

pub struct Solver {
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<LBool>,
    phase: Vec<bool>,
    level: Vec<u32>,
    reason: Vec<usize>,
    activity: Vec<f64>,
    var_inc: f64,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    ok: bool,
    conflicts: u64,
    budget: Option<u64>,
}

fn lit_of(l: i32) -> u32 {
    debug_assert!(l != 0);
    let v = (l.unsigned_abs() - 1) << 1;
    if l < 0 {
        v | 1
    } else {
        v
    }
}

fn lit_value(assign: &[LBool], lit: u32) -> LBool {
    match assign[(lit >> 1) as usize] {
        LBool::Undef => LBool::Undef,
        LBool::True => {
            if lit & 1 == 0 {
                LBool::True
            } else {
                LBool::False
            }
        }
        LBool::False => {
            if lit & 1 == 0 {
                LBool::False
            } else {
                LBool::True
            }
        }
    }
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        let mut s = Solver {
            clauses: Vec::new(),
            watches: Vec::new(),
            assign: Vec::new(),
            phase: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            activity: Vec::new(),
            var_inc: 1.0,
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: Vec::new(),
            ok: true,
            conflicts: 0,
            budget: None,
        };
        s.ensure_vars(num_vars);
        s
    }

    pub fn from_cnf(cnf: &CnfFormula, budget: Option<u64>) -> Self {
        let mut s = Solver::new(cnf.num_vars);
        s.budget = budget;
        for clause in &cnf.clauses {
            s.add_clause(clause);
        }
        s
    }

    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.budget = budget;
    }

    pub fn num_vars(&self) -> usize {
        self.assign.len()
    }

    fn ensure_vars(&mut self, n: usize) {
        while self.assign.len() < n {
            self.assign.push(LBool::Undef);
            self.phase.push(false);
            self.level.push(0);
            self.reason.push(NO_REASON);
            self.activity.push(0.0);
            self.seen.push(false);
            self.watches.push(Vec::new());
            self.watches.push(Vec::new());
        }
    }

    fn value(&self, lit: u32) -> LBool {
        lit_value(&self.assign, lit)
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause in DIMACS literals. Always lands at decision level 0;
    /// any in-progress search state is rolled back first.
    pub fn add_clause(&mut self, lits: &[i32]) {
        self.cancel_until(0);
        if !self.ok {
            return;
        }
        if let Some(&max) = lits.iter().max_by_key(|l| l.unsigned_abs()) {
            self.ensure_vars(max.unsigned_abs() as usize);
        }
        let mut encoded: Vec<u32> = lits.iter().map(|&l| lit_of(l)).collect();
        encoded.sort_unstable();
        encoded.dedup();
        // Complementary literals are adjacent after sorting.
        if encoded.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        let mut keep = Vec::with_capacity(encoded.len());
        for &l in &encoded {
            match self.value(l) {
                LBool::True => return,
                LBool::False => {}
                LBool::Undef => keep.push(l),
            }
        }
        match keep.len() {
            0 => self.ok = false,
            1 => {
                if !self.enqueue(keep[0], NO_REASON) || self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                let ci = self.clauses.len();
                self.watches[keep[0] as usize].push(ci);
                self.watches[keep[1] as usize].push(ci);
                self.clauses.push(keep);
            }
        }
    }

    fn enqueue(&mut self, lit: u32, reason: usize) -> bool {
        match self.value(lit) {
            LBool::True => true,
            LBool::False => false,
            LBool::Undef => {
                let v = (lit >> 1) as usize;
                self.assign[v] = if lit & 1 == 0 {
                    LBool::True
                } else {
                    LBool::False
                };
                self.level[v] = self.decision_level();
                self.reason[v] = reason;
                self.trail.push(lit);
                true
            }
        }
    }

    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if lit_value(&self.assign, first) == LBool::True {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for j in 2..clause.len() {
                    if lit_value(&self.assign, clause[j]) != LBool::False {
                        clause.swap(1, j);
                        let new_watch = clause[1];
                        self.watches[new_watch as usize].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if self.value(first) == LBool::False {
                    self.watches[false_lit as usize] = ws;
                    return Some(ci);
                }
                self.enqueue(first, ci);
                i += 1;
            }
            self.watches[false_lit as usize] = ws;
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
    }

    /// First unique implication point conflict analysis. Returns the learnt
    /// clause (asserting literal first) and the backjump level.
    fn analyze(&mut self, mut confl: usize) -> (Vec<u32>, u32) {
        let mut learnt: Vec<u32> = vec![0];
        let mut counter = 0usize;
        let mut p: Option<u32> = None;
        let mut idx = self.trail.len();
        let mut to_clear: Vec<usize> = Vec::new();
        loop {
            let start = usize::from(p.is_some());
            for j in start..self.clauses[confl].len() {
                let q = self.clauses[confl][j];
                let v = (q >> 1) as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    to_clear.push(v);
                    self.bump(v);
                    if self.level[v] >= self.decision_level() {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[(self.trail[idx] >> 1) as usize] {
                    break;
                }
            }
            let pl = self.trail[idx];
            let v = (pl >> 1) as usize;
            self.seen[v] = false;
            counter -= 1;
            p = Some(pl);
            if counter == 0 {
                break;
            }
            confl = self.reason[v];
        }
        learnt[0] = p.unwrap() ^ 1;
        for v in to_clear {
            self.seen[v] = false;
        }
        let mut backtrack = 0u32;
        if learnt.len() > 1 {
            // The literal of highest level sits at position 1 so the clause
            // watches stay legal after the backjump.
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[(learnt[i] >> 1) as usize]
                    > self.level[(learnt[max_i] >> 1) as usize]
                {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            backtrack = self.level[(learnt[1] >> 1) as usize];
        }
        (learnt, backtrack)
    }

    fn cancel_until(&mut self, target: u32) {
        if self.decision_level() <= target {
            return;
        }
        let lim = self.trail_lim[target as usize];
        for i in (lim..self.trail.len()).rev() {
            let v = (self.trail[i] >> 1) as usize;
            self.phase[v] = self.assign[v] == LBool::True;
            self.assign[v] = LBool::Undef;
            self.reason[v] = NO_REASON;
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(target as usize);
        self.qhead = self.trail.len();
    }

    fn attach_learnt(&mut self, learnt: Vec<u32>) {
        if learnt.len() == 1 {
            if !self.enqueue(learnt[0], NO_REASON) {
                self.ok = false;
            }
            return;
        }
        let ci = self.clauses.len();
        self.watches[learnt[0] as usize].push(ci);
        self.watches[learnt[1] as usize].push(ci);
        let asserting = learnt[0];
        self.clauses.push(learnt);
        let ok = self.enqueue(asserting, ci);
        debug_assert!(ok, "asserting literal must be unassigned after backjump");
    }

    fn pick_branch(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.assign.len() {
            if self.assign[v] == LBool::Undef
                && best.map_or(true, |b| self.activity[v] > self.activity[b])
            {
                best = Some(v);
            }
        }
        best
    }

    /// Decides satisfiability. Restartable: leaves all learnt clauses in
    /// place, so repeated calls (with clauses added in between) stay cheap.
    pub fn solve(&mut self) -> Result<SolveResult> {
        self.cancel_until(0);
        if !self.ok {
            return Ok(SolveResult::Unsat);
        }
        if self.propagate().is_some() {
            self.ok = false;
            return Ok(SolveResult::Unsat);
        }
        let mut restarts = 0u64;
        let mut conflicts_here = 0u64;
        loop {
            match self.propagate() {
                Some(confl) => {
                    self.conflicts += 1;
                    conflicts_here += 1;
                    if let Some(b) = self.budget {
                        if self.conflicts > b {
                            self.cancel_until(0);
                            return Err(Error::BudgetExhausted);
                        }
                    }
                    if self.decision_level() == 0 {
                        self.ok = false;
                        return Ok(SolveResult::Unsat);
                    }
                    let (learnt, backtrack) = self.analyze(confl);
                    self.cancel_until(backtrack);
                    self.attach_learnt(learnt);
                    if !self.ok {
                        return Ok(SolveResult::Unsat);
                    }
                    self.var_inc /= 0.95;
                }
                None => {
                    if conflicts_here >= luby(restarts + 1) * 128 {
                        restarts += 1;
                        conflicts_here = 0;
                        self.cancel_until(0);
                        continue;
                    }
                    match self.pick_branch() {
                        None => {
                            let model = self
                                .assign
                                .iter()
                                .map(|&a| a == LBool::True)
                                .collect();
                            return Ok(SolveResult::Sat(model));
                        }
                        Some(v) => {
                            self.trail_lim.push(self.trail.len());
                            let lit = ((v as u32) << 1) | u32::from(!self.phase[v]);
                            self.enqueue(lit, NO_REASON);
                        }
                    }
                }
            }
        }
    }

    /// Adds the parity constraint `xor(vars) = parity` (vars are 1-based
    /// external indices, `true` means odd). Long constraints are chained into
    /// blocks of at most four literals via fresh auxiliary variables, so each
    /// block expands to at most eight CNF clauses.
    pub fn add_xor(&mut self, vars: &[usize], parity: bool) {
        // Repeated variables cancel pairwise.
        let mut counts = std::collections::BTreeMap::new();
        for &v in vars {
            *counts.entry(v).or_insert(0u32) += 1;
        }
        let mut lits: Vec<i32> = counts
            .into_iter()
            .filter(|&(_, c)| c % 2 == 1)
            .map(|(v, _)| v as i32)
            .collect();
        if lits.is_empty() {
            if parity {
                self.add_clause(&[]);
            }
            return;
        }
        while lits.len() > 4 {
            self.ensure_vars(self.num_vars() + 1);
            let aux = self.num_vars() as i32;
            // aux = l1 ^ l2 ^ l3, i.e. xor(l1, l2, l3, aux) is even.
            let chunk = [lits[0], lits[1], lits[2], aux];
            self.add_parity_clauses(&chunk, false);
            lits.splice(0..3, [aux]);
        }
        let tail = lits.clone();
        self.add_parity_clauses(&tail, parity);
    }

    fn add_parity_clauses(&mut self, lits: &[i32], parity: bool) {
        let k = lits.len();
        debug_assert!(k <= 4);
        for mask in 0u32..(1 << k) {
            let assignment_odd = mask.count_ones() % 2 == 1;
            if assignment_odd == parity {
                continue;
            }
            let clause: Vec<i32> = lits
                .iter()
                .enumerate()
                .map(|(i, &l)| if mask >> i & 1 == 1 { -l } else { l })
                .collect();
            self.add_clause(&clause);
        }
    }

    /// Enumerates models projected onto `support` (1-based indices) by
    /// blocking each found projection, up to `bound`. Blocking clauses rule
    /// out exactly one support assignment each, so every projected model is
    /// reported once.
    pub fn count_projected_upto(
        &mut self,
        support: &[usize],
        bound: u64,
    ) -> Result<ProjectedCount> {
        let mut k = 0u64;
        loop {
            if k >= bound {
                return Ok(ProjectedCount::AtLeast(bound));
            }
            match self.solve()? {
                SolveResult::Unsat => return Ok(ProjectedCount::Exact(k)),
                SolveResult::Sat(model) => {
                    k += 1;
                    if support.is_empty() {
                        return Ok(ProjectedCount::Exact(k));
                    }
                    let blocking: Vec<i32> = support
                        .iter()
                        .map(|&v| if model[v - 1] { -(v as i32) } else { v as i32 })
                        .collect();
                    self.add_clause(&blocking);
                }
            }
        }
    }
}

/// The Luby restart sequence 1, 1, 2, 1, 1, 2, 4, ... (1-based index).
fn luby(mut x: u64) -> u64 {
    loop {
        if (x + 1).is_power_of_two() {
            return (x + 1) / 2;
        }
        let bits = 63 - (x + 1).leading_zeros() as u64;
        x -= (1u64 << bits) - 1;
    }
}
