//! Depth-first branch and bound with bounds propagation over linear rows.
//!
//! Every row is kept bounds-consistent: from the minimum and maximum
//! activity of a row over the current domains, each variable's domain is
//! narrowed to the values that can still satisfy the row. The objective is
//! treated as one more row whose lower side is the incumbent cutoff, so an
//! improving-solution requirement propagates into the item variables.
//! Pruning additionally uses a fractional-fill bound over packing rows
//! (single rows with positive coefficients on binaries, such as budget and
//! cardinality limits).
//!
//! Two structures get extra reasoning. A row whose unit-coefficient binaries
//! all sit inside a cardinality row cannot gain more than that row's
//! remaining room (this drives egalitarian models). An objective that counts
//! covered targets, each needing one of its binaries, is bounded by the
//! largest gains the remaining room can buy (this drives coverage models).

use std::time::Instant;

use super::model::IlpModel;
use crate::error::{CdoError, Result};
use crate::num::{self, Weight};

const NEG: i64 = i64::MIN;
const POS: i64 = i64::MAX;
/// Magnitude limit for any activity, rhs or bound, so that all search
/// arithmetic fits in `i64` without checks.
const LIMIT: i128 = 1 << 60;

#[derive(Debug, Clone)]
struct CRow {
    terms: Vec<(usize, i64)>,
    lower: i64,
    upper: i64,
}

#[derive(Debug, Clone)]
struct Packing {
    row: usize,
    /// `(var, row coefficient, objective coefficient)` by decreasing ratio.
    by_ratio: Vec<(usize, i64, i64)>,
}

/// A row with unit coefficients on binaries and a finite upper side:
/// at most `limit` of `vars` can be 1.
#[derive(Debug, Clone)]
struct Card {
    row: usize,
    limit: i64,
    vars: Vec<usize>,
}

/// A row whose equal-coefficient binary part lies inside a cardinality row,
/// so its maximum activity is capped by that row's remaining capacity.
#[derive(Debug, Clone)]
struct Coupling {
    card: usize,
    coeff: i64,
    part: Vec<usize>,
    member: Vec<bool>,
    rest: Vec<(usize, i64)>,
}

/// Objective of the form `Σ c_z z` where each `z` may only be 1 if one of
/// its covering binaries is, and all covering binaries share a cardinality
/// row. Bounded by the covered part plus the best `room` per-binary gains.
#[derive(Debug, Clone)]
struct Cover {
    card: usize,
    targets: Vec<(usize, i64, Vec<usize>)>,
    other: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Stop at the first feasible point.
    Feasible,
    /// Find a maximiser.
    Maximize,
    /// Collect the item part of every point with objective at least the
    /// given value (before the offset), up to a cap.
    Collect(i64, usize),
}

/// A model lowered to `i64` with propagation indices. Cuts can be appended
/// between searches.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    num_items: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    rows: Vec<CRow>,
    var_rows: Vec<Vec<usize>>,
    objective: Vec<(usize, i64)>,
    obj_row: usize,
    order: Vec<usize>,
    prefer_high: Vec<bool>,
    packings: Vec<Packing>,
    cards: Vec<Card>,
    couplings: Vec<Option<Coupling>>,
    /// Rows coupled to the cardinality rows containing each variable.
    var_coupled: Vec<Vec<usize>>,
    cover: Option<Cover>,
    pub(crate) offset: i64,
}

fn check_magnitude(terms: &[(usize, i64)], lo: &[i64], hi: &[i64], rhs: i128) -> Result<()> {
    let mut total: i128 = rhs.abs();
    for &(v, a) in terms {
        let reach = i128::from(lo[v]).abs().max(i128::from(hi[v]).abs());
        total += i128::from(a).abs() * reach;
        if total > LIMIT {
            return Err(CdoError::Overflow);
        }
    }
    Ok(())
}

fn couple(
    rows: &[CRow],
    lo: &[i64],
    hi: &[i64],
    total_rows: usize,
) -> (Vec<Card>, Vec<Option<Coupling>>, Vec<Vec<usize>>) {
    let binary = |v: usize| lo[v] == 0 && hi[v] == 1;
    let cards: Vec<Card> = rows
        .iter()
        .enumerate()
        .filter(|(_, row)| {
            row.upper != POS
                && row.upper >= 0
                && row.terms.len() >= 3
                && row.terms.iter().all(|&(v, a)| a == 1 && binary(v))
        })
        .map(|(r, row)| Card {
            row: r,
            limit: row.upper,
            vars: row.terms.iter().map(|&(v, _)| v).collect(),
        })
        .collect();
    let mut couplings = vec![None; total_rows];
    let mut var_coupled = vec![Vec::new(); lo.len()];
    if cards.is_empty() {
        return (cards, couplings, var_coupled);
    }
    let members: Vec<Vec<bool>> = cards
        .iter()
        .map(|card| {
            let mut m = vec![false; lo.len()];
            for &v in &card.vars {
                m[v] = true;
            }
            m
        })
        .collect();
    for (r, row) in rows.iter().enumerate() {
        if row.lower == NEG {
            continue;
        }
        let part: Vec<(usize, i64)> = row
            .terms
            .iter()
            .copied()
            .filter(|&(v, a)| a > 0 && binary(v))
            .collect();
        if part.len() < 2 || part.iter().any(|&(_, a)| a != part[0].1) {
            continue;
        }
        let Some(k) = (0..cards.len())
            .find(|&k| cards[k].row != r && part.iter().all(|&(v, _)| members[k][v]))
        else {
            continue;
        };
        if part.len() as i64 <= cards[k].limit {
            continue;
        }
        let mut member = vec![false; lo.len()];
        for &(v, _) in &part {
            member[v] = true;
        }
        let rest = row
            .terms
            .iter()
            .copied()
            .filter(|&(v, _)| !member[v])
            .collect();
        for &v in &cards[k].vars {
            var_coupled[v].push(r);
        }
        couplings[r] = Some(Coupling {
            card: k,
            coeff: part[0].1,
            part: part.into_iter().map(|(v, _)| v).collect(),
            member,
            rest,
        });
    }
    (cards, couplings, var_coupled)
}

fn find_cover(
    rows: &[CRow],
    var_rows: &[Vec<usize>],
    objective: &[(usize, i64)],
    cards: &[Card],
    lo: &[i64],
    hi: &[i64],
) -> Option<Cover> {
    let binary = |v: usize| lo[v] == 0 && hi[v] == 1;
    let mut card = None;
    let mut targets = Vec::new();
    let mut other = Vec::new();
    for &(z, c) in objective {
        let covering = (c > 0 && binary(z))
            .then(|| {
                var_rows[z].iter().find_map(|&r| {
                    let row = rows.get(r)?;
                    let ok = row.lower == NEG
                        && row.upper == 0
                        && row.terms.iter().all(|&(v, a)| {
                            (v == z && a == 1) || (v != z && a == -1 && binary(v))
                        });
                    ok.then(|| {
                        row.terms
                            .iter()
                            .filter(|&&(v, _)| v != z)
                            .map(|&(v, _)| v)
                            .collect::<Vec<_>>()
                    })
                })
            })
            .flatten();
        let Some(xs) = covering else {
            other.push((z, c));
            continue;
        };
        let k = match card {
            Some(k) => k,
            None => {
                let k = (0..cards.len()).find(|&k| {
                    xs.iter().all(|x| cards[k].vars.contains(x))
                })?;
                card = Some(k);
                k
            }
        };
        if !xs.iter().all(|x| cards[k].vars.contains(x)) {
            return None;
        }
        targets.push((z, c, xs));
    }
    Some(Cover {
        card: card?,
        targets,
        other,
    })
}

impl Compiled {
    pub(crate) fn new<W: Weight>(model: &IlpModel<W>) -> Result<Self> {
        let n = model.vars().len();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for var in model.vars() {
            let (l, h) = var.kind.bounds();
            lo.push(num::to_i64(l)?);
            hi.push(num::to_i64(h)?);
        }
        if lo.iter().chain(&hi).any(|&b| i128::from(b).abs() > LIMIT) {
            return Err(CdoError::Overflow);
        }

        let mut rows = Vec::with_capacity(model.rows().len() + 1);
        for row in model.rows() {
            let mut terms: Vec<(usize, i64)> = Vec::with_capacity(row.terms.len());
            for &(v, c) in &row.terms {
                let c = num::to_i64(c)?;
                if c == 0 {
                    continue;
                }
                match terms.iter_mut().find(|(u, _)| *u == v) {
                    Some(slot) => slot.1 += c,
                    None => terms.push((v, c)),
                }
            }
            terms.retain(|&(_, c)| c != 0);
            let rhs = num::to_i64(row.rhs)?;
            check_magnitude(&terms, &lo, &hi, i128::from(rhs))?;
            let (lower, upper) = match row.sense {
                crate::model::Sense::Le => (NEG, rhs),
                crate::model::Sense::Ge => (rhs, POS),
                crate::model::Sense::Eq => (rhs, rhs),
            };
            rows.push(CRow {
                terms,
                lower,
                upper,
            });
        }

        let mut dense = vec![0i64; n];
        for &(v, c) in model.objective() {
            dense[v] = dense[v]
                .checked_add(num::to_i64(c)?)
                .ok_or(CdoError::Overflow)?;
        }
        let objective: Vec<(usize, i64)> = dense
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (v, c))
            .collect();
        check_magnitude(&objective, &lo, &hi, 0)?;
        let obj_row = rows.len();
        rows.push(CRow {
            terms: objective.clone(),
            lower: NEG,
            upper: POS,
        });

        let mut var_rows = vec![Vec::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &(v, _) in &row.terms {
                var_rows[v].push(r);
            }
        }

        let num_items = model.num_items();
        let hint = model.branch_hint();
        let mut items: Vec<usize> = (0..num_items).collect();
        items.sort_by(|&a, &b| {
            dense[b]
                .abs()
                .cmp(&dense[a].abs())
                .then(hint[b].cmp(&hint[a]))
                .then(a.cmp(&b))
        });
        let order: Vec<usize> = items.into_iter().chain(num_items..n).collect();
        let prefer_high = (0..n)
            .map(|v| if v < num_items { dense[v] >= 0 } else { dense[v] > 0 })
            .collect();

        let packings = rows[..obj_row]
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let is_packing = row.upper != POS
                    && row
                        .terms
                        .iter()
                        .all(|&(v, a)| a > 0 && lo[v] == 0 && hi[v] == 1);
                if !is_packing {
                    return None;
                }
                let mut by_ratio: Vec<(usize, i64, i64)> = row
                    .terms
                    .iter()
                    .filter(|&&(v, _)| dense[v] > 0)
                    .map(|&(v, a)| (v, a, dense[v]))
                    .collect();
                if by_ratio.len() < 2 {
                    return None;
                }
                by_ratio.sort_by(|&(v1, a1, c1), &(v2, a2, c2)| {
                    (i128::from(c2) * i128::from(a1))
                        .cmp(&(i128::from(c1) * i128::from(a2)))
                        .then(v1.cmp(&v2))
                });
                Some(Packing { row: r, by_ratio })
            })
            .collect();

        let (cards, couplings, var_coupled) = couple(&rows[..obj_row], &lo, &hi, rows.len());
        let cover = find_cover(&rows[..obj_row], &var_rows, &objective, &cards, &lo, &hi);

        Ok(Compiled {
            num_items,
            lo,
            hi,
            rows,
            var_rows,
            objective,
            obj_row,
            order,
            prefer_high,
            packings,
            cards,
            couplings,
            var_coupled,
            cover,
            offset: num::to_i64(model.offset())?,
        })
    }

    pub(crate) fn is_feasible(&self, fixed: &[Option<bool>]) -> Result<bool> {
        Ok(self.run(fixed, Goal::Feasible, None)?.is_some())
    }

    /// Runs the search. Returns the objective (before the offset) and the
    /// full assignment of the best or first acceptable point.
    pub(crate) fn run(
        &self,
        fixed: &[Option<bool>],
        goal: Goal,
        deadline: Option<Instant>,
    ) -> Result<Option<(i64, Vec<i64>)>> {
        let mut search = Search::new(self, goal, deadline);
        search.start(fixed)?;
        Ok(search.best)
    }

    /// Distinct item vectors of the points with objective at least
    /// `threshold`, in search order, and whether more than `cap` exist (only
    /// `cap` are returned then). Items are branched on first and each item
    /// vector is completed once, so the walk visits every such vector once.
    pub(crate) fn collect(
        &self,
        threshold: i64,
        cap: usize,
        deadline: Option<Instant>,
    ) -> Result<(Vec<Vec<bool>>, bool)> {
        let mut search = Search::new(self, Goal::Collect(threshold, cap), deadline);
        search.start(&[])?;
        let truncated = search.found.len() > cap;
        search.found.truncate(cap);
        Ok((search.found, truncated))
    }
}

struct Search<'c> {
    c: &'c Compiled,
    lo: Vec<i64>,
    hi: Vec<i64>,
    trail: Vec<(usize, i64, i64)>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    cutoff: i64,
    stop_at_first: bool,
    done: bool,
    best: Option<(i64, Vec<i64>)>,
    nodes: u64,
    deadline: Option<Instant>,
    gain: Vec<i64>,
    gains: Vec<i64>,
    /// Collection cap, when collecting.
    cap: Option<usize>,
    found: Vec<Vec<bool>>,
    /// All items are fixed below the current node; stop at the first
    /// completion of the auxiliaries.
    sealed: bool,
}

impl<'c> Search<'c> {
    fn new(c: &'c Compiled, goal: Goal, deadline: Option<Instant>) -> Self {
        let (cutoff, stop_at_first) = match goal {
            Goal::Feasible => (NEG, true),
            Goal::Maximize => (NEG, false),
            Goal::Collect(t, _) => (t, false),
        };
        Search {
            c,
            lo: c.lo.clone(),
            hi: c.hi.clone(),
            trail: Vec::new(),
            queue: (0..c.rows.len()).collect(),
            queued: vec![true; c.rows.len()],
            cutoff,
            stop_at_first,
            done: false,
            best: None,
            nodes: 0,
            deadline,
            gain: vec![0; c.lo.len()],
            gains: Vec::new(),
            cap: match goal {
                Goal::Collect(_, cap) => Some(cap),
                _ => None,
            },
            found: Vec::new(),
            sealed: false,
        }
    }

    fn start(&mut self, fixed: &[Option<bool>]) -> Result<()> {
        for (v, f) in fixed.iter().enumerate().take(self.c.num_items) {
            if let Some(b) = *f {
                let val = i64::from(b);
                if !(self.set_lo(v, val) && self.set_hi(v, val)) {
                    return Ok(());
                }
            }
        }
        if self.propagate() {
            self.dfs()?;
        }
        Ok(())
    }

    fn enqueue_var(&mut self, v: usize) {
        let c = self.c;
        for &r in c.var_rows[v].iter().chain(&c.var_coupled[v]) {
            if !self.queued[r] {
                self.queued[r] = true;
                self.queue.push(r);
            }
        }
    }

    fn enqueue_row(&mut self, r: usize) {
        if !self.queued[r] {
            self.queued[r] = true;
            self.queue.push(r);
        }
    }

    fn set_lo(&mut self, v: usize, val: i64) -> bool {
        if val <= self.lo[v] {
            return true;
        }
        if val > self.hi[v] {
            return false;
        }
        self.trail.push((v, self.lo[v], self.hi[v]));
        self.lo[v] = val;
        self.enqueue_var(v);
        true
    }

    fn set_hi(&mut self, v: usize, val: i64) -> bool {
        if val >= self.hi[v] {
            return true;
        }
        if val < self.lo[v] {
            return false;
        }
        self.trail.push((v, self.lo[v], self.hi[v]));
        self.hi[v] = val;
        self.enqueue_var(v);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, l, h) = self.trail.pop().expect("trail above mark");
            self.lo[v] = l;
            self.hi[v] = h;
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(r) = self.queue.pop() {
            self.queued[r] = false;
            if !self.propagate_row(r) {
                for q in self.queue.drain(..) {
                    self.queued[q] = false;
                }
                return false;
            }
        }
        true
    }

    fn activity(&self, r: usize) -> (i64, i64) {
        let mut min = 0i64;
        let mut max = 0i64;
        for &(v, a) in &self.c.rows[r].terms {
            if a > 0 {
                min += a * self.lo[v];
                max += a * self.hi[v];
            } else {
                min += a * self.hi[v];
                max += a * self.lo[v];
            }
        }
        (min, max)
    }

    fn propagate_row(&mut self, r: usize) -> bool {
        let c = self.c;
        let row = &c.rows[r];
        let lower = if r == c.obj_row { self.cutoff } else { row.lower };
        let upper = row.upper;
        let (min, max) = self.activity(r);
        if min > upper || max < lower {
            return false;
        }
        if upper != POS && max > upper {
            let slack = upper - min;
            for &(v, a) in &row.terms {
                let ok = if a > 0 {
                    self.set_hi(v, self.lo[v] + slack / a)
                } else {
                    self.set_lo(v, self.hi[v] - slack / -a)
                };
                if !ok {
                    return false;
                }
            }
        }
        if lower != NEG {
            let (min, max) = self.activity(r);
            if max < lower {
                return false;
            }
            if min < lower {
                let slack = max - lower;
                for &(v, a) in &row.terms {
                    let ok = if a > 0 {
                        self.set_lo(v, self.hi[v] - slack / a)
                    } else {
                        self.set_hi(v, self.lo[v] + slack / -a)
                    };
                    if !ok {
                        return false;
                    }
                }
            }
            if let Some(coupling) = &c.couplings[r] {
                return self.propagate_coupled(coupling, lower);
            }
        }
        true
    }

    /// Lower-side propagation of a coupled row, where at most `room` more
    /// variables of the cardinality row can still become 1.
    fn propagate_coupled(&mut self, cp: &Coupling, lower: i64) -> bool {
        let card = &self.c.cards[cp.card];
        let ones_card: i64 = card.vars.iter().map(|&v| self.lo[v]).sum();
        let room = card.limit - ones_card;
        let mut ones = 0i64;
        let mut free = 0i64;
        for &v in &cp.part {
            if self.lo[v] == 1 {
                ones += 1;
            } else if self.hi[v] == 1 {
                free += 1;
            }
        }
        let rest_max: i64 = cp
            .rest
            .iter()
            .map(|&(v, a)| if a > 0 { a * self.hi[v] } else { a * self.lo[v] })
            .sum();
        let reach = |free: i64, room: i64| cp.coeff * (ones + free.min(room).max(0)) + rest_max;
        let max = reach(free, room);
        if max < lower {
            return false;
        }
        let slack = max - lower;
        for &(v, a) in &cp.rest {
            let ok = if a > 0 {
                self.set_lo(v, self.hi[v] - slack / a)
            } else {
                self.set_hi(v, self.lo[v] + slack / -a)
            };
            if !ok {
                return false;
            }
        }
        if free >= room && reach(free, room - 1) < lower {
            for &v in &card.vars {
                if !cp.member[v] && self.lo[v] < self.hi[v] && !self.set_hi(v, 0) {
                    return false;
                }
            }
        }
        if free <= room && reach(free - 1, room) < lower {
            for &v in &cp.part {
                if self.lo[v] < self.hi[v] && !self.set_lo(v, 1) {
                    return false;
                }
            }
        }
        true
    }

    fn cover_bound(&mut self, cover: &Cover) -> i64 {
        let mut total: i64 = cover
            .other
            .iter()
            .map(|&(v, k)| if k > 0 { k * self.hi[v] } else { k * self.lo[v] })
            .sum();
        let mut open = 0i64;
        for (z, c, xs) in &cover.targets {
            if self.hi[*z] == 0 {
                continue;
            }
            if self.lo[*z] == 1 || xs.iter().any(|&x| self.lo[x] == 1) {
                total += c;
                continue;
            }
            open += c;
            for &x in xs {
                if self.hi[x] == 1 {
                    self.gain[x] += c;
                }
            }
        }
        let card = &self.c.cards[cover.card];
        let ones: i64 = card.vars.iter().map(|&v| self.lo[v]).sum();
        let room = (card.limit - ones).max(0) as usize;
        self.gains.clear();
        for &v in &card.vars {
            if self.lo[v] < self.hi[v] && self.gain[v] > 0 {
                self.gains.push(self.gain[v]);
            }
            self.gain[v] = 0;
        }
        let best: i64 = if room >= self.gains.len() {
            self.gains.iter().sum()
        } else if room == 0 {
            0
        } else {
            self.gains.select_nth_unstable_by(room - 1, |a, b| b.cmp(a));
            self.gains[..room].iter().sum()
        };
        total + best.min(open)
    }

    /// Upper bound on the objective over the current domains.
    fn bound(&mut self) -> i64 {
        let c = self.c;
        let naive: i64 = c
            .objective
            .iter()
            .map(|&(v, k)| if k > 0 { k * self.hi[v] } else { k * self.lo[v] })
            .sum();
        let mut best = naive;
        for p in &c.packings {
            let row = &c.rows[p.row];
            let mut cap = row.upper as i128;
            for &(v, a) in &row.terms {
                cap -= i128::from(a) * i128::from(self.lo[v]);
            }
            let mut removed: i128 = 0;
            let mut fill: i128 = 0;
            for &(v, a, k) in &p.by_ratio {
                if self.lo[v] == self.hi[v] {
                    continue;
                }
                removed += i128::from(k);
                if cap <= 0 {
                    continue;
                }
                let (a, k) = (i128::from(a), i128::from(k));
                if a <= cap {
                    fill += k;
                    cap -= a;
                } else {
                    fill += k * cap / a;
                    cap = 0;
                }
            }
            let bound = i128::from(naive) - removed + fill;
            best = best.min(bound as i64);
        }
        if let Some(cover) = &c.cover {
            best = best.min(self.cover_bound(cover));
        }
        best
    }

    fn pick(&self) -> Option<usize> {
        let open = |&v: &usize| self.lo[v] < self.hi[v];
        if self.cap.is_some() && !self.sealed {
            let item = self.c.order.iter().copied().filter(|&v| v < self.c.num_items).find(open);
            if item.is_some() {
                return item;
            }
        }
        self.c.order.iter().copied().find(open)
    }

    fn items_fixed(&self) -> bool {
        (0..self.c.num_items).all(|v| self.lo[v] == self.hi[v])
    }

    fn record(&mut self) {
        let value: i64 = self
            .c
            .objective
            .iter()
            .map(|&(v, k)| k * self.lo[v])
            .sum();
        if value < self.cutoff {
            return;
        }
        if self.cap.is_some() {
            let items = self.lo[..self.c.num_items].iter().map(|&x| x == 1).collect();
            self.found.push(items);
            // Ends the sealed subtree; `dfs` resumes the walk unless the
            // cap is exceeded.
            self.done = true;
            return;
        }
        self.best = Some((value, self.lo.clone()));
        if self.stop_at_first {
            self.done = true;
        } else {
            self.cutoff = value + 1;
        }
    }

    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(CdoError::Timeout);
                }
            }
        }
        if self.cutoff != NEG
            && (!self.c.packings.is_empty() || self.c.cover.is_some())
            && self.bound() < self.cutoff
        {
            return Ok(());
        }
        if self.cap.is_some() && !self.sealed && self.items_fixed() {
            self.sealed = true;
            let result = self.branch();
            self.sealed = false;
            if self.found.len() <= self.cap.unwrap_or(0) {
                self.done = false;
            }
            return result;
        }
        self.branch()
    }

    fn branch(&mut self) -> Result<()> {
        let Some(v) = self.pick() else {
            self.record();
            return Ok(());
        };
        let mark = self.trail.len();
        let high_first = self.c.prefer_high[v];
        for first in [true, false] {
            let take_high = first == high_first;
            let (l, h) = (self.lo[v], self.hi[v]);
            let ok = match (take_high, first) {
                // x = hi, then x <= hi - 1
                (true, true) => self.set_lo(v, h),
                (false, false) => self.set_hi(v, h - 1),
                // x = lo, then x >= lo + 1
                (false, true) => self.set_hi(v, l),
                (true, false) => self.set_lo(v, l + 1),
            };
            if ok {
                self.enqueue_row(self.c.obj_row);
                if self.propagate() {
                    self.dfs()?;
                }
            }
            self.undo(mark);
            if self.done {
                break;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Agenda, Sense};
    use crate::solver::VarKind;

    fn knapsack() -> IlpModel<i64> {
        // max 5a + 4b + 3c  s.t.  2a + 3b + c <= 4
        let agenda = Agenda::new([("a", 2i64), ("b", 3), ("c", 1)]).unwrap();
        let mut m = IlpModel::new(&agenda);
        m.add_row(vec![(0, 2), (1, 3), (2, 1)], Sense::Le, 4).unwrap();
        m.set_objective(vec![(0, 5), (1, 4), (2, 3)], 0).unwrap();
        m
    }

    #[test]
    fn maximises_small_knapsack() {
        let c = Compiled::new(&knapsack()).unwrap();
        let (value, x) = c.run(&[], Goal::Maximize, None).unwrap().unwrap();
        assert_eq!(value, 8);
        assert_eq!(x, vec![1, 0, 1]);
    }

    #[test]
    fn respects_fixings() {
        let c = Compiled::new(&knapsack()).unwrap();
        let (value, x) = c
            .run(&[None, Some(true), None], Goal::Maximize, None)
            .unwrap()
            .unwrap();
        assert_eq!((value, x), (7, vec![0, 1, 1]));
        assert!(c
            .run(&[Some(true), Some(true), None], Goal::Feasible, None)
            .unwrap()
            .is_none());
    }

    #[test]
    fn collects_points_above_threshold() {
        let c = Compiled::new(&knapsack()).unwrap();
        let (mut found, truncated) = c.collect(7, 10, None).unwrap();
        found.sort();
        assert_eq!(found, [[false, true, true], [true, false, true]]);
        assert!(!truncated);
        let (all, _) = c.collect(0, 10, None).unwrap();
        assert_eq!(all.len(), 6);
        let (some, truncated) = c.collect(0, 3, None).unwrap();
        assert_eq!(some.len(), 3);
        assert!(truncated);
        assert!(c.collect(9, 10, None).unwrap().0.is_empty());
    }

    #[test]
    fn collection_visits_each_item_vector_once() {
        // a + b <= 1 with a free integer y in [0, 3]: three item vectors,
        // each with four completions.
        let agenda = Agenda::<i64>::unit(["a", "b"]).unwrap();
        let mut m = IlpModel::new(&agenda);
        m.add_var("y", VarKind::Integer { lo: 0, hi: 3 }).unwrap();
        m.add_row(vec![(0, 1), (1, 1)], Sense::Le, 1).unwrap();
        m.set_objective(vec![(2, 1)], 0).unwrap();
        let c = Compiled::new(&m).unwrap();
        let (found, truncated) = c.collect(0, 10, None).unwrap();
        assert_eq!(found.len(), 3);
        assert!(!truncated);
    }

    #[test]
    fn integer_variables_are_searched() {
        // a + b = 2y, y in [0, 1], maximise y - a: y = 1 forces a = b = 1.
        let agenda = Agenda::<i64>::unit(["a", "b"]).unwrap();
        let mut m = IlpModel::new(&agenda);
        let y = m.add_var("y", VarKind::Integer { lo: 0, hi: 1 }).unwrap();
        m.add_row(vec![(0, 1), (1, 1), (y, -2)], Sense::Eq, 0).unwrap();
        m.set_objective(vec![(y, 3), (0, -1)], 0).unwrap();
        let c = Compiled::new(&m).unwrap();
        let (value, x) = c.run(&[], Goal::Maximize, None).unwrap().unwrap();
        assert_eq!((value, x), (2, vec![1, 1, 1]));
    }

    #[test]
    fn ratcheting_flow_detects_infeasibility() {
        // p - q = 1 and q - p = 1 over [0, 7]: no solution.
        let agenda = Agenda::<i64>::unit(Vec::<String>::new()).unwrap();
        let mut m = IlpModel::new(&agenda);
        let p = m.add_var("p", VarKind::Integer { lo: 0, hi: 7 }).unwrap();
        let q = m.add_var("q", VarKind::Integer { lo: 0, hi: 7 }).unwrap();
        m.add_row(vec![(p, 1), (q, -1)], Sense::Eq, 1).unwrap();
        m.add_row(vec![(q, 1), (p, -1)], Sense::Eq, 1).unwrap();
        let c = Compiled::new(&m).unwrap();
        assert!(!c.is_feasible(&[]).unwrap());
    }

    #[test]
    fn huge_coefficients_are_rejected() {
        let agenda = Agenda::<i64>::unit(["a"]).unwrap();
        let mut m = IlpModel::new(&agenda);
        m.set_objective(vec![(0, i64::MAX)], 0).unwrap();
        assert_eq!(Compiled::new(&m).unwrap_err(), CdoError::Overflow);
    }
}
