//! The decomposition of an incomplete sequence into an exceptional part and
//! equal-length blocks inside translates of one subspace.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::d1::{classify_d1, D1Outcome};
use super::increment::{dimension_increment, project_subspace};
use super::rich::{find_rich_hyperplane, RichHyperplaneResult};
use super::{find_translate, floor_times, DecompositionParams};
use crate::error::{ensure, Error, Result};
use crate::group::{norm, AffineFlat, GroupElement, GroupSpec, Subspace};
use crate::sumset::{first_complete_layer, subsums_all_layers, subsums_exact, ElementSequence};

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// The exceptional part `A_0`.
    pub a0: ElementSequence,
    pub blocks: Vec<ElementSequence>,
    pub h: Subspace,
    /// `translate_witness + H ⊆ m_witness * A_0`.
    pub m_witness: usize,
    pub translate_witness: GroupElement,
    /// The `ε` whose `⌊εp⌋` is the block length.
    pub epsilon: f64,
}

impl Decomposition {
    pub fn block_len(&self) -> usize {
        floor_times(self.epsilon, self.h.spec().p())
    }
}

/// `m*A = F_p^d`, checked exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletenessWitness {
    pub m: usize,
}

/// Which argument produced the subspace `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// A peeled block covers a translate of its own hyperplane direction.
    RichBlock,
    /// Certificates from the peeled blocks, each decomposed one dimension
    /// down, composed into `H`.
    Recursion,
    /// `H = {0}`: blocks are constant runs.
    Points,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::RichBlock => "rich-block",
            Route::Recursion => "recursion",
            Route::Points => "points",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// One line per stage and per `ε` tried.
    pub notes: Vec<String>,
    /// Smallest `|A_0|` reached by any candidate, against the bound `αp`.
    pub smallest_exceptional: Option<usize>,
    pub exceptional_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecomposeOutcome {
    Decomposed { decomposition: Decomposition, route: Route, report: VerificationReport, diagnostics: Diagnostics },
    Complete(CompletenessWitness),
    Inconclusive(Diagnostics),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

/// Checks every clause of a decomposition exactly: multiset partition,
/// `|A_0| ≤ αp`, block lengths `⌊εp⌋` (with `ε` from `params`, or the
/// decomposition's own when `params.epsilon` is `None`), each block inside one
/// coset of `H`, and `t + H ⊆ m*A_0` with `1 ≤ m ≤ |A_0|`.
pub fn verify_decomposition(a: &ElementSequence, dec: &Decomposition, params: &DecompositionParams) -> VerificationReport {
    let spec = a.spec();
    let p = spec.p();
    let mut clauses = Vec::new();
    let mut push = |name, passed, detail: String| clauses.push(Clause { name, passed, detail });

    let same_group = dec.h.spec() == spec && dec.a0.spec() == spec && dec.blocks.iter().all(|b| b.spec() == spec);
    let mut union = dec.a0.clone();
    for b in &dec.blocks {
        union = union.union(b);
    }
    let partition = same_group && union == *a;
    push(
        "partition",
        partition,
        if partition {
            format!("A_0 and {} blocks partition all {} elements", dec.blocks.len(), a.len())
        } else {
            format!("parts hold {} elements, A has {}, and the multisets differ", union.len(), a.len())
        },
    );

    let bound = params.alpha * p as f64;
    push(
        "exceptional_size",
        dec.a0.len() as f64 <= bound,
        format!("|A_0| = {} against alpha*p = {bound}", dec.a0.len()),
    );

    let len = floor_times(params.epsilon.unwrap_or(dec.epsilon), p);
    let bad: Vec<usize> = dec.blocks.iter().map(|b| b.len()).filter(|&l| l != len).collect();
    push(
        "block_length",
        len >= 1 && bad.is_empty(),
        if bad.is_empty() { format!("every block has {len} elements") } else { format!("lengths {bad:?} differ from {len}") },
    );

    let stray = dec.blocks.iter().position(|b| {
        let mut reps = b.distinct().map(|x| dec.h.reduce_index(x));
        let first = reps.next();
        !reps.all(|r| Some(r) == first)
    });
    push(
        "blocks_in_translates",
        same_group && stray.is_none(),
        match stray {
            None => format!("every block lies in one coset of H (dim {})", dec.h.dim()),
            Some(i) => format!("block {i} meets more than one coset of H"),
        },
    );

    let m = dec.m_witness;
    let witness = if !same_group || m == 0 || m > dec.a0.len() {
        Err(format!("m = {m} is outside 1..={}", dec.a0.len()))
    } else {
        let layer = subsums_exact(&dec.a0, m).expect("m is in range");
        let t = dec.translate_witness.index();
        match dec.h.members().into_iter().find(|&v| !layer.contains(spec.add(t, v))) {
            None => Ok(()),
            Some(v) => Err(format!("{} is not in {m}*A_0", spec.element_at(spec.add(t, v)))),
        }
    };
    push(
        "witness_translate",
        witness.is_ok(),
        witness.err().unwrap_or_else(|| format!("{} + H lies in {m}*A_0", dec.translate_witness)),
    );
    VerificationReport { clauses }
}

/// Number of seeded removal orders tried when shrinking a witness.
const SHRINK_ORDERS: u64 = 6;

/// A sub-multiset `w` with `t + h ⊆ m*w`.
#[derive(Debug, Clone)]
struct Cert {
    w: ElementSequence,
    m: usize,
    t: usize,
    h: Subspace,
}

/// Smallest `m ≤ max_m` with a translate of `h` inside `m*w`, and that
/// translate.
///
/// With `w ⊆ w0 + U` for the span `U` of the differences, `m*w ⊆ m·w0 + U`, so
/// the layers are computed in coordinates of `U`; `h ⊄ U` rules out any
/// covering.
fn covering(w: &ElementSequence, h: &Subspace, max_m: usize) -> Option<(usize, usize)> {
    let spec = w.spec();
    let w0 = w.distinct().next()?;
    if max_m == 0 {
        return None;
    }
    let diffs: Vec<usize> = w.distinct().map(|x| spec.sub(x, w0)).collect();
    let u = Subspace::span_indices(spec, &diffs);
    if !u.contains_subspace(h) {
        return None;
    }
    if u.is_zero() {
        return Some((1, w0));
    }
    let sub = GroupSpec::new(spec.p() as u64, u.dim() as u32).expect("dimension at least one");
    let local = |x: usize| sub.encode(&u.coordinates(&spec.decode(x))).expect("residues");
    let inner = w.map_into(sub, |x| local(spec.sub(x, w0))).expect("same prime");
    let h_images: Vec<usize> = h.basis().iter().map(|v| sub.encode(&u.coordinates(v)).expect("residues")).collect();
    let inner_h = Subspace::span_indices(sub, &h_images);
    let layers = subsums_all_layers(&inner, max_m);
    layers.iter().enumerate().skip(1).find_map(|(m, layer)| {
        find_translate(layer, &inner_h).map(|f| {
            let t = spec.encode(&u.combine(f.translate().coords())).expect("residues");
            (m, spec.add(t, spec.times(m, w0)))
        })
    })
}

/// Drops witness elements one at a time, in a seeded random order, while some
/// `m ≤ max_m` still covers a translate of `H`.
fn shrink(cert: Cert, max_m: usize, seed: u64) -> Cert {
    let mut best = cert;
    let set = ElementSequence::from_indices(best.w.spec(), best.w.distinct()).expect("same group");
    if set.len() < best.w.len() {
        if let Some((m, t)) = covering(&set, &best.h, max_m) {
            best = Cert { w: set, m, t, h: best.h };
        }
    }
    let mut order = best.w.to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for x in order {
        if best.w.len() == 1 {
            break;
        }
        let mut trial = best.w.clone();
        trial.remove(x, 1).expect("x is still present");
        if let Some((m, t)) = covering(&trial, &best.h, max_m.min(trial.len())) {
            best = Cert { w: trial, m, t, h: best.h };
        }
    }
    best
}

/// Cuts everything outside the witness into blocks of `len` elements inside
/// cosets of `H`; the witness and the per-coset remainders form `A_0`.
fn regroup(a: &ElementSequence, cert: &Cert, len: usize, epsilon: f64) -> Result<Decomposition> {
    let spec = a.spec();
    let pool = a.difference(&cert.w)?;
    let mut cosets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in pool.iter() {
        cosets.entry(cert.h.reduce_index(x)).or_default().push(x);
    }
    let mut a0 = cert.w.clone();
    let mut blocks = Vec::new();
    for members in cosets.values() {
        let mut chunks = members.chunks_exact(len);
        for c in chunks.by_ref() {
            blocks.push(ElementSequence::from_indices(spec, c.iter().copied())?);
        }
        for &x in chunks.remainder() {
            a0.push(x, 1);
        }
    }
    Ok(Decomposition {
        a0,
        blocks,
        h: cert.h.clone(),
        m_witness: cert.m,
        translate_witness: spec.element_at(cert.t),
        epsilon,
    })
}

enum Attempt {
    Complete(usize),
    /// Certificates in order of preference.
    Candidates(Vec<(Route, Cert)>),
}

/// Maps `x ∈ c + V` to its coordinates in `V`, as an element of F_p^{dim V}.
fn into_flat(sub: GroupSpec, flat: &AffineFlat, x: usize) -> usize {
    let spec = flat.space().spec();
    let v = spec.decode(spec.sub(x, flat.translate().index()));
    sub.encode(&flat.space().coordinates(&v)).expect("coordinates are residues")
}

fn out_of_flat(sub: GroupSpec, flat: &AffineFlat, y: usize, copies: usize) -> usize {
    let spec = flat.space().spec();
    let v = spec.encode(&flat.space().combine(&sub.decode(y))).expect("residues");
    spec.add(v, spec.times(copies, flat.translate().index()))
}

fn lift_subspace(sub_h: &Subspace, flat: &AffineFlat) -> Subspace {
    let spec = flat.space().spec();
    let images: Vec<usize> =
        sub_h.basis().iter().map(|b| spec.encode(&flat.space().combine(b)).expect("residues")).collect();
    Subspace::span_indices(spec, &images)
}

fn note_projection(a: &ElementSequence, block: &ElementSequence, hyperplane: &AffineFlat, cutoff: f64, notes: &mut Vec<String>) -> Result<()> {
    let spec = a.spec();
    let Some(normal) = hyperplane.space().normal() else { return Ok(()) };
    let line = GroupSpec::new(spec.p() as u64, 1)?;
    let rest = a.difference(block)?;
    let projected = rest.map_into(line, |x| spec.dot(&normal, x) as usize)?;
    if projected.is_empty() {
        return Ok(());
    }
    match classify_d1(&projected)? {
        D1Outcome::Complete => notes.push("projection onto the complementary line is complete".into()),
        D1Outcome::Dilation(split) => {
            let b = split.b;
            let mut outliers = split.flat.len();
            let mut values = 0;
            for &(x, k) in split.sharp.entries() {
                if norm(&line, x as u32)? as f64 >= cutoff {
                    outliers += k;
                } else {
                    values += 1;
                }
            }
            notes.push(format!(
                "projection onto the complementary line: b = {b}, {outliers} outliers (flat part or norm >= {cutoff:.2}), {values} distinct parallel hyperplanes"
            ));
        }
    }
    Ok(())
}

fn attempt(
    a: &ElementSequence,
    params: &DecompositionParams,
    epsilon: f64,
    check_complete: bool,
    notes: &mut Vec<String>,
) -> Result<Attempt> {
    let spec = a.spec();
    let p = spec.p();
    let d = spec.d();
    let beta_p = (params.beta * p as f64).floor() as usize;
    if check_complete {
        if let Some(m) = first_complete_layer(a, beta_p) {
            return Ok(Attempt::Complete(m));
        }
    }
    let local = params.with_epsilon(epsilon);

    let mut residue = a.clone();
    let mut peeled: Vec<(ElementSequence, AffineFlat)> = Vec::new();
    while !residue.is_empty() && residue.len() as f64 >= params.delta * p as f64 {
        match find_rich_hyperplane(&residue, &local)? {
            RichHyperplaneResult::Hyperplane { hyperplane, .. } => {
                let block = residue.filter(|x| hyperplane.contains_index(x));
                residue = residue.difference(&block)?;
                peeled.push((block, hyperplane));
            }
            RichHyperplaneResult::Complete { m } => return Ok(Attempt::Complete(m)),
            RichHyperplaneResult::Inconclusive { reason, .. } => {
                notes.push(format!("d = {d}: peeling stopped with {} elements left: {reason}", residue.len()));
                break;
            }
        }
    }

    let mut candidates = Vec::new();
    let half = beta_p / 2;
    let rich = peeled.iter().find_map(|(block, flat)| {
        covering(block, flat.space(), half).map(|(m, t)| (block, flat, Cert { w: block.clone(), m, t, h: flat.space().clone() }))
    });
    if let Some((block, flat, cert)) = rich {
        let cutoff = params.norm_cutoff.unwrap_or(2.0 / epsilon);
        note_projection(a, block, flat, cutoff, notes)?;
        candidates.push((Route::RichBlock, cert));
    } else if d >= 2 && !peeled.is_empty() {
        let sub = GroupSpec::new(p as u64, (d - 1) as u32)?;
        let mut certs = Vec::new();
        for (block, flat) in &peeled {
            let inner = block.map_into(sub, |x| into_flat(sub, flat, x))?;
            match attempt(&inner, params, epsilon, true, notes)? {
                Attempt::Complete(m) => certs.push(Cert {
                    w: block.clone(),
                    m,
                    t: spec.times(m, flat.translate().index()),
                    h: flat.space().clone(),
                }),
                Attempt::Candidates(list) => {
                    if let Some((_, c)) = list.into_iter().next() {
                        certs.push(Cert {
                            w: c.w.map_into(spec, |y| out_of_flat(sub, flat, y, 0))?.translated(flat.translate().index()),
                            m: c.m,
                            t: out_of_flat(sub, flat, c.t, c.m),
                            h: lift_subspace(&c.h, flat),
                        });
                    }
                }
            }
        }
        if let Some(cert) = compose(certs)? {
            candidates.push((Route::Recursion, cert));
        }
    }
    // a point whose run does not split evenly into blocks costs nothing extra as the witness
    let len = floor_times(epsilon, p);
    let odd_run = a.entries().iter().find(|&&(_, k)| k % len != 0).or(a.entries().first()).map(|e| e.0);
    if let Some(x) = odd_run {
        let points = Cert { w: ElementSequence::from_indices(spec, [x])?, m: 1, t: x, h: Subspace::zero(spec) };
        if candidates.first().is_none_or(|(_, c)| !c.h.is_zero()) {
            candidates.push((Route::Points, points));
        }
    }
    Ok(Attempt::Candidates(candidates))
}

/// Folds certificates from disjoint parts into one for the sum of their
/// subspaces, skipping those whose subspace adds nothing.
fn compose(certs: Vec<Cert>) -> Result<Option<Cert>> {
    let mut iter = certs.into_iter();
    let Some(mut acc) = iter.next() else { return Ok(None) };
    for c in iter {
        if acc.h.contains_subspace(&c.h) {
            continue;
        }
        let complement = acc.h.coordinate_complement();
        let h2 = project_subspace(&c.h, &acc.h, &complement)?;
        let flat = dimension_increment(&acc.w, acc.m, &acc.h, &c.w, c.m, &complement, &h2)?;
        acc = Cert { w: acc.w.union(&c.w), m: acc.m + c.m, t: flat.translate().index(), h: flat.space().clone() };
    }
    Ok(Some(acc))
}

/// Decomposes `a` or certifies `m*A = F_p^d` for some `m ≤ βp`.
///
/// Peels the affine hyperplane content of `a` while at least `δp` elements
/// remain. If a peeled block `B` has `m*B` covering its hyperplane for some
/// `m ≤ βp/2`, its direction becomes `H`; otherwise each block is decomposed
/// one dimension down and the resulting certificates are composed. The whole
/// sequence is then regrouped by cosets of `H`. Every returned decomposition
/// has passed [`verify_decomposition`].
pub fn decompose(a: &ElementSequence, params: &DecompositionParams) -> Result<DecomposeOutcome> {
    params.validate()?;
    let spec = a.spec();
    let p = spec.p();
    ensure!(
        !a.is_empty() && a.len() as f64 >= params.delta * p as f64,
        Precondition,
        "the sequence has {} elements, fewer than delta*p = {}",
        a.len(),
        params.delta * p as f64
    );
    let beta_p = (params.beta * p as f64).floor() as usize;
    if let Some(m) = first_complete_layer(a, beta_p) {
        return Ok(DecomposeOutcome::Complete(CompletenessWitness { m }));
    }
    let bound = params.alpha * p as f64;
    let mut diag = Diagnostics { exceptional_bound: bound, ..Default::default() };
    let schedule = params.epsilon_schedule(p);
    if schedule.is_empty() {
        diag.notes.push(format!("epsilon*p < 2 for every epsilon <= alpha/2 = {} at p = {p}", params.alpha / 2.0));
    }
    for epsilon in schedule {
        let len = floor_times(epsilon, p);
        ensure!(len >= 1, Input, "epsilon = {epsilon} gives empty blocks at p = {p}");
        let mut notes = Vec::new();
        let candidates = match attempt(a, params, epsilon, false, &mut notes)? {
            Attempt::Complete(m) => {
                if !subsums_exact(a, m)?.is_full() {
                    return Err(Error::Internal(format!("claimed completeness at m = {m} does not hold")));
                }
                return Ok(DecomposeOutcome::Complete(CompletenessWitness { m }));
            }
            Attempt::Candidates(c) => c,
        };
        for note in notes {
            diag.notes.push(format!("epsilon = {epsilon}: {note}"));
        }
        let max_m = bound.floor() as usize;
        for (route, cert) in candidates {
            let dec = (0..SHRINK_ORDERS)
                .map(|k| regroup(a, &shrink(cert.clone(), max_m.max(1), params.seed.wrapping_add(k)), len, epsilon))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min_by_key(|dec| dec.a0.len())
                .expect("at least one order");
            let size = dec.a0.len();
            diag.smallest_exceptional = Some(diag.smallest_exceptional.map_or(size, |s| s.min(size)));
            if size as f64 > bound {
                diag.notes.push(format!(
                    "epsilon = {epsilon}: {} route with H of dimension {} leaves |A_0| = {size} > {bound}",
                    route.as_str(),
                    dec.h.dim()
                ));
                continue;
            }
            let report = verify_decomposition(a, &dec, params);
            if !report.passed() {
                return Err(Error::Internal(format!("constructed decomposition fails verification: {report:?}")));
            }
            return Ok(DecomposeOutcome::Decomposed { decomposition: dec, route, report, diagnostics: diag });
        }
    }
    Ok(DecomposeOutcome::Inconclusive(diag))
}
