//! Seeded synthetic situations with planted template instances and clutter.
//!
//! A plant is assembled constraint by constraint in bottom-up order. Each
//! constraint samples its fuzzy sets (inside the core at distortion 0, up to
//! the support at distortion 1), lays its members out in a canonical frame
//! and then moves whole groups of already placed objects rigidly so the
//! members land where the canonical layout wants them. Every plant is graded
//! afterwards and resampled until it passes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fgr::{reference_point, FgrInstance, FgrSpec, RefMode};
use crate::fuzzy::{Domain, FuzzySet};
use crate::geometry::{Angle, Isometry, OrientedPoint, Point2};
use crate::recognition::{evaluate_assignment, Evaluation, Situation, SituationObject};
use crate::template::{Arg, CompiledTemplate, Template, ValidationReport};

const MAX_ATTEMPTS: usize = 100;
/// Range used for distances constrained only by the unconstrained set.
const FREE_DISTANCE: (f64, f64) = (1.0, 10.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub min: Point2,
    pub max: Point2,
}

impl Region {
    fn sample(&self, rng: &mut impl Rng) -> Point2 {
        Point2::new(uniform(rng, self.min.x, self.max.x), uniform(rng, self.min.y, self.max.y))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Layout {
    #[default]
    Uniform,
    /// Objects spread uniformly over discs around centers drawn in the region.
    Clusters { count: usize, radius: f64 },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Clutter {
    /// Values drawn uniformly per attribute for every clutter object.
    #[serde(default)]
    pub attributes: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub layout: Layout,
}

/// A template to plant, inline or by path relative to the spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TemplateRef {
    Path(String),
    Inline(Box<Template>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Plant {
    pub template: TemplateRef,
    /// 0 samples every set inside its core, 1 anywhere inside its support.
    #[serde(default)]
    pub distortion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub id: String,
    /// Total number of objects, planted ones included.
    pub n: usize,
    pub region: Region,
    #[serde(default)]
    pub clutter: Clutter,
    #[serde(default)]
    pub plants: Vec<Plant>,
    /// Probability that an object's orientation is left undefined.
    #[serde(default)]
    pub undefined_orientation: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("template path `{0}` was not resolved")]
    UnresolvedTemplate(String),
    #[error("planted template is invalid: {0}")]
    Template(#[from] ValidationReport),
    #[error("n = {n} is smaller than the {planted} planted objects")]
    TooFewObjects { n: usize, planted: usize },
    #[error("could not plant `{template}` in {attempts} attempts; last weakest constraint `{weakest}`")]
    InfeasiblePlant {
        template: String,
        attempts: usize,
        weakest: String,
    },
}

/// A generated situation and, per plant, the mapping from template object
/// ids to situation object ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub situation: Situation,
    pub plants: Vec<BTreeMap<String, String>>,
}

fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.gen_range(lo..hi)
    } else {
        lo
    }
}

/// Draws a value whose membership is at least `1 - distortion` (see module docs).
fn sample_set(rng: &mut impl Rng, set: &FuzzySet, distortion: f64, domain: Domain) -> f64 {
    match set.trapezoid() {
        None => match domain {
            Domain::Linear => uniform(rng, FREE_DISTANCE.0, FREE_DISTANCE.1),
            Domain::Circular => uniform(rng, 0.0, 360.0),
        },
        Some(t) => {
            let [a, b, c, d] = t.unwrapped();
            uniform(rng, b - distortion * (b - a), c + distortion * (d - c))
        }
    }
}

fn sample_angle(rng: &mut impl Rng, set: &FuzzySet, distortion: f64) -> f64 {
    sample_set(rng, set, distortion, Domain::Circular)
}

fn sample_length(rng: &mut impl Rng, set: &FuzzySet, distortion: f64) -> f64 {
    sample_set(rng, set, distortion, Domain::Linear)
}

fn jitter(rng: &mut impl Rng, scale: f64) -> Point2 {
    Point2::new(uniform(rng, -scale, scale), uniform(rng, -scale, scale))
}

/// Canonical member layout for one relation: locations and orientations in
/// a local frame. `None` when the sample cannot be realized.
fn canonical(r: &mut ChaCha8Rng, spec: &FgrSpec, delta: f64) -> Option<Vec<OrientedPoint>> {
    let orient = |rng: &mut ChaCha8Rng, reference: f64, set: &FuzzySet| reference + sample_angle(rng, set, delta);
    let at = |p: Point2, o: f64| OrientedPoint::new(p, Some(Angle::wrap(o)));
    let pts = match spec {
        FgrSpec::IsoscelesTriangle { base, height, orien_a, orien_b, orien_c } => {
            let b = sample_length(r, base, delta);
            let h = sample_length(r, height, delta);
            let shift = delta * uniform(r, -0.25, 0.25) * b;
            vec![
                at(Point2::ORIGIN, orient(r, 90.0, orien_a)),
                at(Point2::new(b, 0.0), orient(r, 90.0, orien_b)),
                at(Point2::new(0.5 * b + shift, h), orient(r, 90.0, orien_c)),
            ]
        }
        FgrSpec::EquilateralTriangle { side, orien_a, orien_b, orien_c } => {
            let s = sample_length(r, side, delta);
            let apex = Point2::new(0.5 * s, 0.5 * 3f64.sqrt() * s) + jitter(r, 0.1 * delta * s);
            vec![
                at(Point2::ORIGIN, orient(r, 90.0, orien_a)),
                at(Point2::new(s, 0.0), orient(r, 90.0, orien_b)),
                at(apex, orient(r, 90.0, orien_c)),
            ]
        }
        FgrSpec::RectangleTriangle { base, height, orien_a, orien_b, orien_c } => {
            let b = sample_length(r, base, delta);
            let h = sample_length(r, height, delta);
            let c = Point2::new(b + delta * uniform(r, -0.15, 0.15) * h, h);
            vec![
                at(Point2::ORIGIN, orient(r, 90.0, orien_a)),
                at(Point2::new(b, 0.0), orient(r, 90.0, orien_b)),
                at(c, orient(r, 90.0, orien_c)),
            ]
        }
        FgrSpec::Rectangle { base, height, orien_a, orien_b, orien_c, orien_d } => {
            let b = sample_length(r, base, delta);
            let h = sample_length(r, height, delta);
            let wobble = 0.05 * delta * (b + h);
            vec![
                at(Point2::ORIGIN, orient(r, 90.0, orien_a)),
                at(Point2::new(b, 0.0), orient(r, 90.0, orien_b)),
                at(Point2::new(b, h) + jitter(r, wobble), orient(r, 90.0, orien_c)),
                at(Point2::new(0.0, h) + jitter(r, wobble), orient(r, 90.0, orien_d)),
            ]
        }
        FgrSpec::RingSector { distance, vector, orien_b } => {
            let d = sample_length(r, distance, delta);
            let psi = sample_angle(r, vector, delta);
            let b = Point2::from_angle(Angle::wrap(psi)) * d;
            vec![at(Point2::ORIGIN, 0.0), at(b, orient(r, 0.0, orien_b))]
        }
        FgrSpec::TrapezoidalSection { distance, vector, orien_b } => {
            let along = sample_length(r, distance, delta);
            let mid = vector.core_midpoint().ok()?;
            let psi = sample_angle(r, vector, delta);
            let off = crate::geometry::relative_orientation(Angle::wrap(psi), Angle::wrap(mid));
            if off.abs() >= 80.0 {
                return None;
            }
            let length = along / off.to_radians().cos();
            let b = Point2::from_angle(Angle::wrap(psi)) * length;
            vec![at(Point2::ORIGIN, 0.0), at(b, orient(r, 0.0, orien_b))]
        }
        FgrSpec::Alignment { gaps, members, .. } => {
            let mut x = 0.0;
            let mut out = Vec::with_capacity(members.len());
            for (i, set) in members.iter().enumerate() {
                if i > 0 {
                    x += sample_length(r, &gaps[i - 1], delta);
                }
                let y = delta * uniform(r, -0.05, 0.05) * x.abs().max(1.0);
                out.push(at(Point2::new(x, y), orient(r, 90.0, set)));
            }
            out
        }
    };
    Some(pts)
}

struct Assembly<'c> {
    ct: &'c CompiledTemplate,
    placed: Vec<Option<OrientedPoint>>,
    cluster: Vec<usize>,
}

impl<'c> Assembly<'c> {
    fn new(ct: &'c CompiledTemplate) -> Self {
        let m = ct.object_count();
        Self { ct, placed: vec![None; m], cluster: (0..m).collect() }
    }

    fn instance(&self, c: usize) -> FgrInstance {
        let node = &self.ct.constraints()[c];
        let members: Vec<OrientedPoint> = node.args.iter().map(|a| self.member(*a)).collect();
        node.spec.evaluate(&members)
    }

    fn member(&self, a: Arg) -> OrientedPoint {
        match a {
            Arg::Object(o) => self.placed[o].expect("placed"),
            Arg::Fgr { constraint, mode } => self.reference(constraint, mode),
        }
    }

    fn reference(&self, c: usize, mode: RefMode) -> OrientedPoint {
        let inst = self.instance(c);
        let objects: Vec<Point2> = self.ct.constraints()[c]
            .objects
            .iter()
            .map(|&o| self.placed[o].expect("placed").location)
            .collect();
        reference_point(&inst, &objects, mode)
    }

    /// Cluster label of an argument, `None` for an object not yet placed.
    fn label(&self, a: Arg) -> Option<usize> {
        match a {
            Arg::Object(o) => self.placed[o].map(|_| self.cluster[o]),
            Arg::Fgr { constraint, .. } => Some(self.cluster[self.ct.constraints()[constraint].objects[0]]),
        }
    }

    fn cluster_size(&self, label: usize) -> usize {
        (0..self.placed.len())
            .filter(|&o| self.placed[o].is_some() && self.cluster[o] == label)
            .count()
    }

    fn move_cluster(&mut self, label: usize, motion: &Isometry) {
        for o in 0..self.placed.len() {
            if self.cluster[o] == label {
                if let Some(p) = self.placed[o] {
                    self.placed[o] = Some(motion.apply(p));
                }
            }
        }
    }

    fn relabel(&mut self, from: usize, to: usize) {
        for l in &mut self.cluster {
            if *l == from {
                *l = to;
            }
        }
    }

    fn place(&mut self, c: usize, layout: &[OrientedPoint]) {
        let args = self.ct.constraints()[c].args.clone();
        let labels: Vec<Option<usize>> = args.iter().map(|&a| self.label(a)).collect();
        let anchor = labels
            .iter()
            .flatten()
            .copied()
            .max_by_key(|&l| (self.cluster_size(l), usize::MAX - labels.iter().position(|x| *x == Some(l)).unwrap()));

        // Frame mapping the canonical layout onto the anchor's members.
        let frame = match anchor {
            None => Isometry::IDENTITY,
            Some(l) => {
                let own: Vec<usize> = (0..args.len()).filter(|&i| labels[i] == Some(l)).collect();
                let first = own[0];
                let actual = self.member(args[first]);
                let fitted = own.get(1).and_then(|&second| {
                    let want = layout[second].location - layout[first].location;
                    let have = self.member(args[second]).location - actual.location;
                    let rot = have.heading()?.degrees() - want.heading()?.degrees();
                    Some(Angle::wrap(rot))
                });
                let rotation = fitted.unwrap_or_else(|| {
                    let have = actual.orientation.expect("placed members are oriented").degrees();
                    Angle::wrap(have - layout[first].orientation.expect("oriented").degrees())
                });
                let translation = actual.location - layout[first].location.rotate(rotation);
                Isometry::new(rotation, translation)
            }
        };

        let target = anchor.unwrap_or(usize::MAX);
        let mut moved: Vec<usize> = Vec::new();
        for (i, &a) in args.iter().enumerate() {
            let want = frame.apply(layout[i]);
            match labels[i] {
                None => {
                    let Arg::Object(o) = a else { unreachable!("relations are always placed") };
                    self.placed[o] = Some(want);
                    self.cluster[o] = if target == usize::MAX { o } else { target };
                }
                Some(l) if Some(l) == anchor || moved.contains(&l) => {}
                Some(l) => {
                    let have = self.member(a);
                    let rotation = Angle::wrap(
                        want.orientation.expect("oriented").degrees() - have.orientation.expect("oriented").degrees(),
                    );
                    let translation = want.location - have.location.rotate(rotation);
                    self.move_cluster(l, &Isometry::new(rotation, translation));
                    moved.push(l);
                }
            }
        }
        // Merge every member's group into one.
        let mut group = None;
        for &a in &args {
            let l = self.label(a).expect("placed now");
            match group {
                None => group = Some(l),
                Some(g) if g != l => self.relabel(l, g),
                _ => {}
            }
        }
    }
}

fn build_plant(rng: &mut ChaCha8Rng, ct: &CompiledTemplate, delta: f64) -> Option<Vec<OrientedPoint>> {
    let mut asm = Assembly::new(ct);
    let order: Vec<usize> = ct.topological_order().map(|id| ct.constraint_index(id).expect("known")).collect();
    for c in order {
        let layout = canonical(rng, &ct.constraints()[c].spec, delta)?;
        asm.place(c, &layout);
    }
    asm.placed.into_iter().collect()
}

/// Generates a situation from a spec whose plants are all inline.
pub fn generate_situation(spec: &GenSpec, seed: u64) -> Result<Generated, GenerateError> {
    if !(0.0..=1.0).contains(&spec.undefined_orientation) {
        return Err(GenerateError::InvalidSpec("undefined_orientation must lie in [0, 1]".into()));
    }
    if !(spec.region.min.x <= spec.region.max.x && spec.region.min.y <= spec.region.max.y) {
        return Err(GenerateError::InvalidSpec("region min must not exceed max".into()));
    }
    let mut compiled = Vec::with_capacity(spec.plants.len());
    for p in &spec.plants {
        if !(0.0..=1.0).contains(&p.distortion) {
            return Err(GenerateError::InvalidSpec("distortion must lie in [0, 1]".into()));
        }
        match &p.template {
            TemplateRef::Path(path) => return Err(GenerateError::UnresolvedTemplate(path.clone())),
            TemplateRef::Inline(t) => compiled.push(t.compile()?),
        }
    }
    let planted: usize = compiled.iter().map(CompiledTemplate::object_count).sum();
    if spec.n < planted {
        return Err(GenerateError::TooFewObjects { n: spec.n, planted });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // (template object id per plant, or None for clutter) and the object.
    let mut pool: Vec<(Option<(usize, String)>, SituationObject)> = Vec::with_capacity(spec.n);
    for (pi, (ct, plant)) in compiled.iter().zip(&spec.plants).enumerate() {
        let objects = plant_objects(&mut rng, ct, plant.distortion, spec)?;
        for (o, obj) in objects.into_iter().enumerate() {
            pool.push((Some((pi, ct.object(o).id.clone())), obj));
        }
    }
    let centers: Vec<Point2> = match spec.clutter.layout {
        Layout::Uniform => Vec::new(),
        Layout::Clusters { count, .. } => (0..count.max(1)).map(|_| spec.region.sample(&mut rng)).collect(),
    };
    for i in 0..spec.n - planted {
        let location = match spec.clutter.layout {
            Layout::Uniform => spec.region.sample(&mut rng),
            Layout::Clusters { radius, .. } => {
                let center = centers[i % centers.len()];
                let r = radius * rng.gen::<f64>().sqrt();
                center + Point2::from_angle(Angle::wrap(uniform(&mut rng, 0.0, 360.0))) * r
            }
        };
        let orientation = Angle::wrap(uniform(&mut rng, 0.0, 360.0));
        let mut obj = SituationObject::new(String::new(), location, Some(orientation));
        if rng.gen::<f64>() < spec.undefined_orientation {
            obj.orientation = None;
        }
        for (name, values) in &spec.clutter.attributes {
            if let Some(v) = values.choose(&mut rng) {
                obj.attributes.insert(name.clone(), v.clone());
            }
        }
        pool.push((None, obj));
    }

    pool.shuffle(&mut rng);
    let width = spec.n.to_string().len().max(2);
    let mut plants = vec![BTreeMap::new(); compiled.len()];
    let mut objects = Vec::with_capacity(pool.len());
    for (i, (role, mut obj)) in pool.into_iter().enumerate() {
        obj.id = format!("o{:0width$}", i + 1);
        if let Some((pi, tid)) = role {
            plants[pi].insert(tid, obj.id.clone());
        }
        objects.push(obj);
    }
    Ok(Generated { situation: Situation::new(spec.id.clone(), objects), plants })
}

/// Objects of one verified plant, in template object order.
fn plant_objects(
    rng: &mut ChaCha8Rng,
    ct: &CompiledTemplate,
    delta: f64,
    spec: &GenSpec,
) -> Result<Vec<SituationObject>, GenerateError> {
    let mut weakest = String::from("(no realizable sample)");
    for _ in 0..MAX_ATTEMPTS {
        let Some(points) = build_plant(rng, ct, delta) else { continue };
        let centroid = Point2::centroid(points.iter().map(|p| p.location)).expect("objects");
        let motion = Isometry::new(Angle::wrap(uniform(rng, 0.0, 360.0)), Point2::ORIGIN);
        let target = spec.region.sample(rng);
        let shift = target - centroid.rotate(motion.rotation);
        let motion = Isometry::new(motion.rotation, shift);
        let objects: Vec<SituationObject> = points
            .iter()
            .enumerate()
            .map(|(o, p)| {
                let p = motion.apply(*p);
                let mut obj = SituationObject::new(ct.object(o).id.clone(), p.location, p.orientation);
                if rng.gen::<f64>() < spec.undefined_orientation {
                    obj.orientation = None;
                }
                obj.attributes = ct.object(o).attributes.clone();
                obj
            })
            .collect();
        let probe = Situation::new("probe", objects);
        let mapping: BTreeMap<String, String> =
            probe.objects.iter().map(|o| (o.id.clone(), o.id.clone())).collect();
        let eval = evaluate_assignment(ct, &probe, &mapping).expect("plant mapping is well formed");
        let ok = match &eval {
            Evaluation::Instance(i) => {
                if delta == 0.0 {
                    i.overall >= 1.0 - 1e-9
                } else {
                    i.overall > 0.0
                }
            }
            Evaluation::BelowZero { .. } => false,
        };
        if ok {
            return Ok(probe.objects);
        }
        weakest = eval.breakdown().weakest_constraint().id.clone();
    }
    Err(GenerateError::InfeasiblePlant {
        template: ct.id().to_owned(),
        attempts: MAX_ATTEMPTS,
        weakest,
    })
}
