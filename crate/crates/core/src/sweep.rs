//! Exhaustive property sweeps over `S_n`.
//!
//! Each check runs independently per permutation (in parallel); reports are
//! sorted by permutation so output is deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bvpd;
use crate::diagram::{Diagram, Tile};
use crate::error::{Error, Result};
use crate::mvpd::{self, deficit};
use crate::permutation::Permutation;
use crate::pipedream::{Limits, PipeDreamIndex};
use crate::support::{self, Conj13Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Pipe dream and MVPD sums give the same single and double polynomials.
    #[serde(rename = "eq1-vs-cor37")]
    Eq1VsCor37,
    /// Φ is a weight-preserving bijection onto the directly enumerated set.
    Prop36,
    /// BVPD sum equals the top component.
    Thm43,
    /// Ψ maps BVPDs onto top pipe dreams with the predicted Crosses.
    Thm44,
    /// `M ↦ B` is a bijection from top MVPDs onto BVPDs.
    Prop49,
    /// `|wty(M)| + #Bump + #ElbowSE = r(w)`.
    Lemma46,
    /// `raj(w) = maj(w)` exactly for fireworks `w`.
    Prop25,
    /// `raj(w) = raj(w⁻¹)`.
    Cor26,
    Conj12,
    Conj13,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Eq1VsCor37,
        CheckKind::Prop36,
        CheckKind::Thm43,
        CheckKind::Thm44,
        CheckKind::Prop49,
        CheckKind::Lemma46,
        CheckKind::Prop25,
        CheckKind::Cor26,
        CheckKind::Conj12,
        CheckKind::Conj13,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Eq1VsCor37 => "eq1-vs-cor37",
            CheckKind::Prop36 => "prop36",
            CheckKind::Thm43 => "thm43",
            CheckKind::Thm44 => "thm44",
            CheckKind::Prop49 => "prop49",
            CheckKind::Lemma46 => "lemma46",
            CheckKind::Prop25 => "prop25",
            CheckKind::Cor26 => "cor26",
            CheckKind::Conj12 => "conj12",
            CheckKind::Conj13 => "conj13",
        }
    }

    /// Checks that only make sense for inverse fireworks permutations.
    pub fn needs_inverse_fireworks(self) -> bool {
        matches!(self, CheckKind::Thm43 | CheckKind::Thm44 | CheckKind::Prop49)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub inverse_fireworks_only: bool,
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub w: Permutation,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub check: CheckKind,
    pub n: usize,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{} n={}: {status} ({} checked, {} skipped, {} failures)",
            self.check,
            self.n,
            self.checked,
            self.skipped,
            self.failures.len()
        )?;
        for fail in &self.failures {
            write!(f, "\n  {}: {}", fail.w, fail.detail)?;
        }
        Ok(())
    }
}

fn index_for(n: usize, limits: &Limits) -> Result<Arc<PipeDreamIndex>> {
    limits.check(n)?;
    if Limits::default().check(n).is_ok() {
        PipeDreamIndex::shared(n)
    } else {
        Ok(Arc::new(PipeDreamIndex::build_with(n, limits)?))
    }
}

pub fn run(check: CheckKind, n: usize, options: &SweepOptions) -> Result<SweepReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let index = index_for(n, &options.limits)?;
    let perms: Vec<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|w| !options.inverse_fireworks_only || w.is_inverse_fireworks())
        .collect();
    let outcomes: Vec<(Permutation, Option<Vec<String>>)> = perms
        .into_par_iter()
        .map(|w| {
            if check.needs_inverse_fireworks() && !w.is_inverse_fireworks() {
                return (w, None);
            }
            let found = check_one(check, &index, &w, &options.limits)
                .unwrap_or_else(|e| vec![format!("error: {e}")]);
            (w, Some(found))
        })
        .collect();
    let mut report = SweepReport {
        check,
        n,
        checked: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for (w, found) in outcomes {
        match found {
            None => report.skipped += 1,
            Some(details) => {
                report.checked += 1;
                report
                    .failures
                    .extend(details.into_iter().map(|detail| Failure { w: w.clone(), detail }));
            }
        }
    }
    report.failures.sort_by(|a, b| a.w.cmp(&b.w));
    Ok(report)
}

/// Failure descriptions for one permutation (empty when it passes).
pub fn check_one(
    check: CheckKind,
    index: &PipeDreamIndex,
    w: &Permutation,
    limits: &Limits,
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut expect = |ok: bool, what: String| {
        if !ok {
            out.push(what);
        }
    };
    match check {
        CheckKind::Eq1VsCor37 => {
            let set = mvpd::mvpd_set_in(index, w)?;
            expect(
                mvpd::grothendieck_over(&set.members, w, false)? == index.grothendieck(w)?,
                "single polynomials differ".into(),
            );
            expect(
                mvpd::grothendieck_over(&set.members, w, true)? == index.double_grothendieck(w)?,
                "double polynomials differ".into(),
            );
        }
        CheckKind::Prop36 => {
            let pds = index.pd_set(w)?;
            let mut images = Vec::with_capacity(pds.len());
            for p in &pds {
                let m = mvpd::phi(p, w)?;
                expect(
                    p.weighty_cells() == m.weighty_cells(),
                    format!("weighty cells move under phi:\n{}", p.render_text()),
                );
                expect(
                    &mvpd::phi_inverse(&m, w)? == p,
                    format!("phi_inverse does not undo phi:\n{}", p.render_text()),
                );
                images.push(m);
            }
            let distinct: BTreeSet<String> = images.iter().map(Diagram::render_text).collect();
            expect(distinct.len() == images.len(), "phi is not injective".into());
            crate::diagram::sort_canonical(&mut images);
            let direct = mvpd::enumerate_direct_with(w, limits)?;
            expect(
                images == direct.members,
                format!(
                    "phi image has {} members, direct enumeration {}",
                    images.len(),
                    direct.len()
                ),
            );
        }
        CheckKind::Thm43 => {
            let g = index.grothendieck(w)?;
            let top = g.top_component()?;
            let sum = bvpd::top_grothendieck_via_bvpd(w)?;
            let raj = g.total_degree()? as usize;
            let signed = if (raj + w.length()) % 2 == 1 { -&sum } else { sum };
            expect(top == signed, "BVPD sum differs from the top component".into());
        }
        CheckKind::Thm44 => {
            let bs = bvpd::enumerate_bvpd_with(w, limits)?;
            let mut images = Vec::with_capacity(bs.len());
            for b in &bs {
                let p = bvpd::psi(b, w)?;
                expect(
                    p.weighty_cells() == bvpd::predicted_psi_crosses(b)?,
                    format!("Cross positions of psi are off for\n{}", b.render_text()),
                );
                expect(
                    &bvpd::psi_inverse(&p, w)? == b,
                    format!("psi_inverse does not undo psi:\n{}", b.render_text()),
                );
                images.push(p);
            }
            crate::diagram::sort_canonical(&mut images);
            expect(
                images == index.top_pd_set(w)?,
                "psi image is not the set of top pipe dreams".into(),
            );
        }
        CheckKind::Prop49 => {
            let set = mvpd::mvpd_set_in(index, w)?;
            let tops = mvpd::top_of(&set.members)?;
            let mut images = Vec::with_capacity(tops.len());
            for m in &tops {
                expect(deficit(m) == 0, format!("top MVPD with a deficit:\n{}", m.render_text()));
                expect(
                    (1..=m.n()).all(|i| matches!(m.tile(i, 1), Tile::Blank | Tile::Horizontal)),
                    format!("first column not Blank/Horizontal:\n{}", m.render_text()),
                );
                let b = bvpd::m_to_b(m, w)?;
                expect(b.weight() == m.weight(), "m_to_b changes the weight".into());
                expect(&bvpd::b_to_m(&b, w)? == m, "b_to_m does not undo m_to_b".into());
                images.push(b);
            }
            crate::diagram::sort_canonical(&mut images);
            expect(
                images == bvpd::enumerate_bvpd_with(w, limits)?,
                "m_to_b image is not BVPD(w)".into(),
            );
        }
        CheckKind::Lemma46 => {
            let set = mvpd::mvpd_set_in(index, w)?;
            for m in &set.members {
                expect(
                    mvpd::lemma46_check(m, w),
                    format!("tile count off (r = {}):\n{}", w.r_stat(), m.render_text()),
                );
            }
            if w.is_inverse_fireworks() {
                let best = set.members.iter().map(|m| m.weighty_cells().len()).max();
                expect(
                    best == Some(w.r_stat()) && index.raj(w)? == w.r_stat(),
                    format!("max weight {best:?} vs r = {}", w.r_stat()),
                );
            }
        }
        CheckKind::Prop25 => {
            let raj = index.raj(w)?;
            expect(
                (raj == w.maj()) == w.is_fireworks(),
                format!("raj = {raj}, maj = {}, fireworks = {}", w.maj(), w.is_fireworks()),
            );
        }
        CheckKind::Cor26 => {
            let (a, b) = (index.raj(w)?, index.raj(&w.inverse())?);
            expect(a == b, format!("raj = {a}, raj of inverse = {b}"));
        }
        CheckKind::Conj12 => {
            out.extend(support::check_conj12_in(index, w)?.failures);
        }
        CheckKind::Conj13 => {
            let direct = support::check_conj13_in(index, w, Conj13Mode::Direct)?;
            out.extend(direct.failures.iter().map(|f| format!("direct: {f}")));
            if w.is_inverse_fireworks() {
                let built = support::check_conj13_in(index, w, Conj13Mode::Constructive)?;
                out.extend(built.failures.iter().map(|f| format!("constructive: {f}")));
            }
        }
    }
    Ok(out)
}
