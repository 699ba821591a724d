//! Observed-data model for an RDS study.
//!
//! An [`ObservedData`] value holds the recruitment forest, reported degrees,
//! event times, and coupon bookkeeping for `n` subjects ordered by
//! recruitment time. Subjects are indexed `0..n` in recruitment order
//! throughout the crate; published formulas that depend on the recruitment
//! rank use the 1-based rank `i + 1`.
//!
//! The coupon matrix is never materialized as a dense `n x n` array. Because
//! coupon counts only decrease, the set of events during which subject `i`
//! holds at least one coupon is a contiguous interval of event indices, so
//! [`CouponMatrix`] stores one interval per subject and answers both row and
//! column queries from it.

use serde::{Deserialize, Serialize};

use crate::error::DataError;
use crate::real::Real;

/// One subject's raw row, before validation.
#[derive(Debug, Clone)]
pub struct SubjectRecord<R> {
    /// Identifier used only for error reporting.
    pub label: String,
    /// Recruitment (or seed entry) time.
    pub time: R,
    /// Reported degree in the hidden population graph.
    pub degree: u32,
    /// Index of the recruiter among the time-ordered subjects; `None` for seeds.
    pub recruiter: Option<u32>,
    /// Coupons handed to this subject on entry.
    pub coupons: u32,
}

/// Sparse coupon matrix: per-subject holding intervals.
///
/// Subject `i` holds at least one coupon just before event `k` exactly when
/// `i < k <= hold_until[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouponMatrix {
    hold_until: Vec<u32>,
}

impl CouponMatrix {
    /// True when subject `i` holds a coupon just before event `k`.
    #[inline]
    pub fn holds(&self, subject: usize, event: usize) -> bool {
        subject < event && event <= self.hold_until[subject] as usize
    }

    /// Last event index (inclusive) before which subject `i` still holds a coupon.
    #[inline]
    pub fn hold_until(&self, subject: usize) -> usize {
        self.hold_until[subject] as usize
    }

    /// Subjects holding at least one coupon just before event `k`.
    pub fn holders(&self, event: usize) -> impl Iterator<Item = usize> + '_ {
        self.hold_until
            .iter()
            .enumerate()
            .take(event)
            .filter(move |&(_, &until)| event <= until as usize)
            .map(|(i, _)| i)
    }

    /// Number of events before which subject `i` holds a coupon (row sum).
    pub fn row_sum(&self, subject: usize) -> usize {
        (self.hold_until[subject] as usize).saturating_sub(subject)
    }

    fn n(&self) -> usize {
        self.hold_until.len()
    }
}

/// Inter-event waiting times `w[k] = t[k] - t[k-1]` with the study starting
/// at time zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WaitingTimes<R>(Vec<R>);

impl<R: Real> WaitingTimes<R> {
    fn from_times(times: &[R]) -> Self {
        let mut prev = R::zero();
        let w = times
            .iter()
            .map(|&t| {
                let gap = t - prev;
                prev = t;
                gap
            })
            .collect();
        WaitingTimes(w)
    }

    pub fn as_slice(&self) -> &[R] {
        &self.0
    }
}

/// Validated observation of one RDS study.
#[derive(Debug, Clone)]
pub struct ObservedData<R = crate::Scalar> {
    labels: Vec<String>,
    times: Vec<R>,
    degrees: Vec<u32>,
    recruiter_of: Vec<Option<u32>>,
    coupons_issued: Vec<u32>,
    recruit_counts: Vec<u32>,
    seed_count: usize,
    coupons: CouponMatrix,
    exhaust_times: Vec<R>,
    waiting: WaitingTimes<R>,
}

impl<R: Real> ObservedData<R> {
    /// Validate time-ordered subject records and derive the coupon ledger.
    ///
    /// Records must already be sorted by strictly increasing time with every
    /// recruiter appearing before its recruits; CSV ingestion takes care of
    /// the ordering.
    pub fn from_records(records: Vec<SubjectRecord<R>>) -> Result<Self, DataError> {
        if records.is_empty() {
            return Err(DataError::Empty);
        }
        let n = records.len();

        for pair in records.windows(2) {
            if !(pair[1].time > pair[0].time) {
                return Err(DataError::DuplicateTime(format!("{}", pair[1].time)));
            }
        }
        if !(records[0].time >= R::zero()) || !records.iter().all(|r| r.time.is_finite()) {
            return Err(DataError::Invalid(
                "recruitment times must be finite and nonnegative".into(),
            ));
        }

        let mut recruit_counts = vec![0u32; n];
        for (j, rec) in records.iter().enumerate() {
            if let Some(r) = rec.recruiter {
                if r as usize >= n {
                    return Err(DataError::UnknownRecruiter {
                        subject: rec.label.clone(),
                        recruiter: format!("#{}", r + 1),
                    });
                }
                if r as usize >= j {
                    return Err(DataError::RecruiterNotEarlier {
                        subject: rec.label.clone(),
                        recruiter: records[r as usize].label.clone(),
                    });
                }
                recruit_counts[r as usize] += 1;
            }
        }

        for (j, rec) in records.iter().enumerate() {
            if rec.degree == 0 {
                return Err(DataError::DegreeNotPositive {
                    subject: rec.label.clone(),
                });
            }
            let incident = recruit_counts[j] + u32::from(rec.recruiter.is_some());
            if rec.degree < incident {
                return Err(DataError::DegreeTooSmall {
                    subject: rec.label.clone(),
                    degree: rec.degree,
                    incident,
                });
            }
            if recruit_counts[j] > rec.coupons {
                return Err(DataError::CouponOverdraw {
                    subject: rec.label.clone(),
                    recruits: recruit_counts[j],
                    coupons: rec.coupons,
                });
            }
        }

        // Coupon ledger replay: subject i stops holding coupons after the
        // event at which it spends its last one.
        let mut hold_until: Vec<u32> = (0..n as u32).collect();
        let mut spent = vec![0u32; n];
        for (k, rec) in records.iter().enumerate() {
            if let Some(r) = rec.recruiter {
                let r = r as usize;
                spent[r] += 1;
                debug_assert!(spent[r] <= records[r].coupons);
                if spent[r] == records[r].coupons {
                    hold_until[r] = k as u32;
                }
            }
        }
        for (i, rec) in records.iter().enumerate() {
            if rec.coupons == 0 {
                hold_until[i] = i as u32;
            } else if spent[i] < rec.coupons {
                hold_until[i] = (n - 1) as u32;
            }
        }

        let times: Vec<R> = records.iter().map(|r| r.time).collect();
        let exhaust_times = hold_until.iter().map(|&e| times[e as usize]).collect();
        let waiting = WaitingTimes::from_times(&times);
        let seed_count = records.iter().filter(|r| r.recruiter.is_none()).count();

        Ok(ObservedData {
            labels: records.iter().map(|r| r.label.clone()).collect(),
            times,
            degrees: records.iter().map(|r| r.degree).collect(),
            recruiter_of: records.iter().map(|r| r.recruiter).collect(),
            coupons_issued: records.iter().map(|r| r.coupons).collect(),
            recruit_counts,
            seed_count,
            coupons: CouponMatrix { hold_until },
            exhaust_times,
            waiting,
        })
    }

    pub fn n(&self) -> usize {
        self.times.len()
    }

    pub fn seed_count(&self) -> usize {
        self.seed_count
    }

    #[inline]
    pub fn is_seed(&self, subject: usize) -> bool {
        self.recruiter_of[subject].is_none()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn times(&self) -> &[R] {
        &self.times
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn recruiter_of(&self) -> &[Option<u32>] {
        &self.recruiter_of
    }

    pub fn coupons_issued(&self) -> &[u32] {
        &self.coupons_issued
    }

    pub fn recruit_counts(&self) -> &[u32] {
        &self.recruit_counts
    }

    pub fn coupon_matrix(&self) -> &CouponMatrix {
        &self.coupons
    }

    /// Time at which the subject spent its last coupon, or the end of the
    /// study if it never did.
    pub fn exhaust_times(&self) -> &[R] {
        &self.exhaust_times
    }

    pub fn waiting_times(&self) -> &WaitingTimes<R> {
        &self.waiting
    }

    /// Directed recruitment edges as (recruiter, recruit) pairs.
    pub fn recruitment_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.recruiter_of
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.map(|i| (i as usize, j)))
    }

    /// True when `{i, j}` is a recruitment edge (in either direction).
    #[inline]
    pub fn is_recruitment_edge(&self, i: usize, j: usize) -> bool {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        self.recruiter_of[hi] == Some(lo as u32)
    }

    /// Smallest admissible population size `n + max_i d_i`.
    pub fn min_pop_size(&self) -> u64 {
        self.n() as u64 + u64::from(*self.degrees.iter().max().expect("nonempty"))
    }
}

/// Symmetric adjacency over the sampled vertices, bit-packed.
#[derive(Clone, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Adjacency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Adjacency")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Adjacency {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        Adjacency {
            n,
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = Adjacency::new(n);
        for &(i, j) in edges {
            adj.set(i, j);
        }
        adj
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    /// Insert the undirected edge `{i, j}`.
    pub fn set(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.n && j < self.n, "invalid edge ({i},{j})");
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words_per_row + i / 64] |= 1 << (i % 64);
    }

    /// Remove the undirected edge `{i, j}`.
    pub fn clear(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] &= !(1 << (j % 64));
        self.bits[j * self.words_per_row + i / 64] &= !(1 << (i % 64));
    }

    pub fn row_degree(&self, i: usize) -> u32 {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        row.iter().map(|w| w.count_ones()).sum()
    }

    /// Neighbors of `i` with index at least `from`.
    pub fn row_degree_from(&self, i: usize, from: usize) -> u32 {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        let first_word = from / 64;
        let mut count = 0u32;
        for (w, &word) in row.iter().enumerate().skip(first_word) {
            let masked = if w == first_word {
                word & (u64::MAX << (from % 64))
            } else {
                word
            };
            count += masked.count_ones();
        }
        count
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        let total: u64 = self.bits.iter().map(|w| u64::from(w.count_ones())).sum();
        (total / 2) as usize
    }
}

/// First compatibility condition violated by a candidate subgraph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("vertex count {got} does not match the {expected} sampled subjects")]
    VertexCount { expected: usize, got: usize },
    #[error("recruitment edge {recruiter}->{recruit} missing from subgraph")]
    MissingRecruitmentEdge { recruiter: usize, recruit: usize },
    #[error("subject {subject} has {incident} subgraph edges but degree {degree}")]
    DegreeExceeded {
        subject: usize,
        incident: u32,
        degree: u32,
    },
}

/// Check the three compatibility conditions of a candidate subgraph against
/// the observed data, reporting the first violation.
pub fn check_compatibility<R: Real>(
    adj: &Adjacency,
    obs: &ObservedData<R>,
) -> Result<(), Violation> {
    if adj.n() != obs.n() {
        return Err(Violation::VertexCount {
            expected: obs.n(),
            got: adj.n(),
        });
    }
    for (i, j) in obs.recruitment_edges() {
        if !adj.contains(i, j) {
            return Err(Violation::MissingRecruitmentEdge {
                recruiter: i,
                recruit: j,
            });
        }
    }
    for (v, &d) in obs.degrees().iter().enumerate() {
        let incident = adj.row_degree(v);
        if incident > d {
            return Err(Violation::DegreeExceeded {
                subject: v,
                incident,
                degree: d,
            });
        }
    }
    Ok(())
}

/// Pendant-edge counts at the end of the study: `u_i = d_i` minus the number
/// of subgraph edges at `i`.
pub fn pendant_counts(adj: &Adjacency, degrees: &[u32]) -> Result<Vec<u32>, Violation> {
    degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let incident = adj.row_degree(i);
            if incident > d {
                Err(Violation::DegreeExceeded {
                    subject: i,
                    incident,
                    degree: d,
                })
            } else {
                Ok(d - incident)
            }
        })
        .collect()
}

/// Pendant-edge counts at the moment of recruitment and their total: edges
/// to vertices not yet sampled when the subject entered.
pub fn entry_pendant_counts(
    adj: &Adjacency,
    degrees: &[u32],
) -> Result<(Vec<u32>, u64), Violation> {
    let mut total = 0u64;
    let counts = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let earlier = adj.row_degree(i) - adj.row_degree_from(i, i);
            if earlier > d {
                Err(Violation::DegreeExceeded {
                    subject: i,
                    incident: earlier,
                    degree: d,
                })
            } else {
                total += u64::from(d - earlier);
                Ok(d - earlier)
            }
        })
        .collect::<Result<Vec<u32>, _>>()?;
    Ok((counts, total))
}

/// Susceptible-edge counts just before each event, plus total edge-time
/// exposure.
///
/// An edge is susceptible when one endpoint is a coupon-holding recruiter and
/// the other is not yet recruited; pendant edges of a coupon holder are always
/// susceptible. Returns the per-event counts and their waiting-time-weighted
/// sum.
pub fn susceptible_profile<R: Real>(
    adj: &Adjacency,
    obs: &ObservedData<R>,
    pendants: &[u32],
) -> (Vec<u64>, R) {
    let n = obs.n();
    let coupons = obs.coupon_matrix();
    let mut counts = vec![0u64; n];
    for (event, count) in counts.iter_mut().enumerate() {
        let mut c = 0u64;
        for holder in coupons.holders(event) {
            c += u64::from(pendants[holder]);
            c += u64::from(adj.row_degree_from(holder, event));
        }
        *count = c;
    }
    let exposure = counts
        .iter()
        .zip(obs.waiting_times().as_slice())
        .map(|(&s, &w)| R::from_count(s) * w)
        .sum();
    (counts, exposure)
}
