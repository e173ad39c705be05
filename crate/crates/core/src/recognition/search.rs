//! Backtracking search with threshold cuts.

use std::time::Instant;

use rayon::prelude::*;

use crate::geometry::Point2;
use crate::spatial_index::{build_knn_table, KnnTable};
use crate::template::{max_span_bound, CompiledTemplate, SpanBound};

use super::eval::{Context, State};
use super::{sort_instances, MatchOptions, MatchStats, Recognition, RecognitionError, Situation, TemplateInstance};

/// Top-level branches handed to one worker at a time.
const CHUNK: usize = 32;

/// A prepared search over one template and situation.
pub struct Matcher<'a> {
    ctx: Context<'a>,
    threshold: f64,
    options: MatchOptions,
    knn: Option<KnnTable>,
    bounds: Vec<SpanBound>,
}

impl<'a> Matcher<'a> {
    pub fn new(
        ct: &'a CompiledTemplate,
        situation: &'a Situation,
        threshold: f64,
        options: MatchOptions,
    ) -> Result<Self, RecognitionError> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(RecognitionError::ThresholdOutOfRange(threshold));
        }
        if options.max_instances == Some(0) {
            return Err(RecognitionError::InvalidOptions("max_instances must be at least 1".into()));
        }
        if options.use_span_filter && options.knn == 0 {
            return Err(RecognitionError::InvalidOptions("knn must be at least 1".into()));
        }
        let ctx = Context::new(ct, situation)?;
        let knn = options.use_span_filter.then(|| build_knn_table(situation, options.knn));
        let bounds = ct.constraints().iter().map(|c| max_span_bound(&c.spec, threshold)).collect();
        Ok(Self { ctx, threshold, options, knn, bounds })
    }

    /// Tuples for the unbound object slots of `constraint` given a partial
    /// mapping (situation object index per template object).
    pub fn candidate_stream(&self, constraint: usize, partial: &[Option<usize>]) -> CandidateStream<'_> {
        let mut used = vec![false; self.ctx.situation.objects.len()];
        for s in partial.iter().flatten() {
            used[*s] = true;
        }
        self.stream(constraint, partial, &used, Vec::new())
    }

    fn stream(
        &self,
        constraint: usize,
        binding: &[Option<usize>],
        used: &[bool],
        anchors: Vec<Point2>,
    ) -> CandidateStream<'_> {
        let node = &self.ctx.ct.constraints()[constraint];
        let mut slots = Vec::new();
        let mut fixed = Vec::new();
        for &o in &node.direct_objects {
            match binding[o] {
                Some(s) => fixed.push(s),
                None => slots.push(o),
            }
        }
        let filter = match (&self.knn, self.bounds[constraint]) {
            (Some(t), b @ SpanBound::Bounded(_)) => Some((t, b)),
            _ => None,
        };
        CandidateStream {
            lists: slots.iter().map(|&o| self.ctx.compat[o].as_slice()).collect(),
            chosen: vec![0; slots.len()],
            cursor: vec![0; slots.len()],
            slots,
            fixed,
            anchors,
            excluded: used.to_vec(),
            depth: 0,
            emitted: false,
            done: false,
            filter,
            rejections: 0,
        }
    }

    pub fn run(&self) -> Recognition {
        let start = Instant::now();
        let plan = self.ctx.ct.plan();
        let first = plan[0];
        let root = State::new(&self.ctx);
        let mut top = self.stream(first, &root.binding, &root.used, Vec::new());
        let slots = top.slots.clone();
        let tuples: Vec<Vec<usize>> = top.by_ref().collect();
        let mut stats = MatchStats { span_rejections: top.rejections, ..MatchStats::default() };

        let work = |chunk: &[Vec<usize>]| {
            let mut state = root.clone();
            let mut found = Vec::new();
            let mut chunk_stats = MatchStats::default();
            for tuple in chunk {
                let mut branch = Branch::new(self);
                branch.enter(&mut state, first, &slots, tuple, 0);
                chunk_stats.absorb(&branch.stats);
                found.extend(branch.kept);
            }
            (found, chunk_stats)
        };
        let parts: Vec<(Vec<TemplateInstance>, MatchStats)> = if self.options.parallel {
            tuples.par_chunks(CHUNK).map(work).collect()
        } else {
            tuples.chunks(CHUNK).map(work).collect()
        };

        let mut instances = Vec::new();
        for (found, s) in parts {
            stats.absorb(&s);
            instances.extend(found);
        }
        sort_instances(&mut instances);
        if let Some(n) = self.options.max_instances {
            if instances.len() > n {
                let cutoff = instances[n - 1].overall;
                instances.retain(|i| i.overall >= cutoff);
            }
        }
        stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        Recognition { instances, stats }
    }
}

/// Recognizes every instance whose overall proximity reaches `threshold`
/// and is positive, best first.
pub fn recognize(
    ct: &CompiledTemplate,
    situation: &Situation,
    threshold: f64,
    options: &MatchOptions,
) -> Result<Recognition, RecognitionError> {
    Ok(Matcher::new(ct, situation, threshold, *options)?.run())
}

/// Search below one top-level tuple. With `max_instances` the cutoff rises
/// to the n-th best proximity found so far in this branch.
struct Branch<'m, 'a> {
    m: &'m Matcher<'a>,
    cutoff: f64,
    kept: Vec<TemplateInstance>,
    stats: MatchStats,
}

impl<'m, 'a> Branch<'m, 'a> {
    fn new(m: &'m Matcher<'a>) -> Self {
        Self { m, cutoff: m.threshold, kept: Vec::new(), stats: MatchStats::default() }
    }

    fn enter(&mut self, state: &mut State, constraint: usize, slots: &[usize], tuple: &[usize], step: usize) {
        let ctx = &self.m.ctx;
        for (&o, &s) in slots.iter().zip(tuple) {
            state.bind(ctx, o, s);
        }
        self.stats.tuples_evaluated += 1;
        let mut hypothesized = Vec::new();
        let p = state.evaluate(ctx, constraint, &mut hypothesized);
        if p > 0.0 && p >= self.cutoff {
            self.descend(state, step + 1);
        } else {
            self.stats.cuts += 1;
        }
        state.retract(constraint, &hypothesized);
        for &o in slots {
            state.unbind(o);
        }
    }

    fn descend(&mut self, state: &mut State, step: usize) {
        let plan = self.m.ctx.ct.plan();
        if step == plan.len() {
            self.stats.mappings_evaluated += 1;
            let inst = state.instance(&self.m.ctx);
            self.keep(inst);
            return;
        }
        let c = plan[step];
        let anchors = state.anchors(&self.m.ctx, c);
        let mut stream = self.m.stream(c, &state.binding, &state.used, anchors);
        let slots = stream.slots.clone();
        for tuple in stream.by_ref() {
            self.enter(state, c, &slots, &tuple, step);
        }
        self.stats.span_rejections += stream.rejections;
    }

    fn keep(&mut self, inst: TemplateInstance) {
        if inst.overall < self.cutoff {
            return;
        }
        self.kept.push(inst);
        if let Some(n) = self.m.options.max_instances {
            if self.kept.len() >= n {
                let mut values: Vec<f64> = self.kept.iter().map(|i| i.overall).collect();
                values.sort_by(|a, b| b.total_cmp(a));
                self.cutoff = self.cutoff.max(values[n - 1]);
                let cutoff = self.cutoff;
                self.kept.retain(|i| i.overall >= cutoff);
            }
        }
    }
}

/// Injective tuples of compatible, unused situation objects for a
/// constraint's unbound object slots, in ascending id order.
///
/// With the span filter on, a candidate is skipped as soon as it lies beyond
/// the constraint's span bound from a member already placed: a bound object
/// or the reference point of a nested relation.
pub struct CandidateStream<'m> {
    lists: Vec<&'m [usize]>,
    slots: Vec<usize>,
    fixed: Vec<usize>,
    /// Reference points of nested arguments.
    anchors: Vec<Point2>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    cursor: Vec<usize>,
    depth: usize,
    emitted: bool,
    done: bool,
    filter: Option<(&'m KnnTable, SpanBound)>,
    rejections: u64,
}

impl CandidateStream<'_> {
    /// Template objects the tuples bind, in order.
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// Candidates discarded by the span filter so far.
    pub fn rejections(&self) -> u64 {
        self.rejections
    }

    fn admits(&mut self, d: usize, candidate: usize) -> bool {
        let Some((table, bound)) = self.filter else { return true };
        let SpanBound::Bounded(b) = bound else { return true };
        let at = table.location(candidate);
        let ok = self.anchors.iter().all(|p| at.distance(*p) <= b)
            && self
                .fixed
                .iter()
                .chain(&self.chosen[..d])
                .all(|&other| table.within(candidate, other, bound));
        if !ok {
            self.rejections += 1;
        }
        ok
    }
}

impl Iterator for CandidateStream<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let k = self.slots.len();
        if self.emitted {
            self.emitted = false;
            if k == 0 {
                self.done = true;
                return None;
            }
            self.depth = k - 1;
            self.excluded[self.chosen[k - 1]] = false;
        }
        loop {
            let d = self.depth;
            if d == k {
                self.emitted = true;
                return Some(self.chosen.clone());
            }
            let mut advanced = false;
            while self.cursor[d] < self.lists[d].len() {
                let candidate = self.lists[d][self.cursor[d]];
                self.cursor[d] += 1;
                if self.excluded[candidate] || !self.admits(d, candidate) {
                    continue;
                }
                self.chosen[d] = candidate;
                self.excluded[candidate] = true;
                self.depth = d + 1;
                if d + 1 < k {
                    self.cursor[d + 1] = 0;
                }
                advanced = true;
                break;
            }
            if !advanced {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.depth = d - 1;
                self.excluded[self.chosen[d - 1]] = false;
            }
        }
    }
}
