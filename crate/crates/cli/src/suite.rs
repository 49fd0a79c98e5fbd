use origin_containment::{origin_containment, Containment};
use origin_transducer::random::{random_pair, RandomParams};
use origin_transducer::{bounded_containment, enumerate_sync_pairs, inputs_up_to, SyncPair, TwoWayTransducer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::verdict::{pair_doc, PairDoc};
use crate::{Bounds, CliError, Outcome};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCase {
    pub case: usize,
    pub verdict: String,
    pub confirmed: Option<bool>,
    /// A counterexample found by the bounded oracle.
    pub oracle: Option<PairDoc>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub max_input: usize,
    pub max_out: usize,
    pub contained: usize,
    pub not_contained: usize,
    pub disagreements: usize,
    pub cases: Vec<SuiteCase>,
}

/// `evidence` is produced by `t1` on its input and not by `t2`.
fn evidence_holds(t1: &TwoWayTransducer, t2: &TwoWayTransducer, evidence: &SyncPair) -> bool {
    let m = evidence.output.len();
    enumerate_sync_pairs(t1, &evidence.input, m).contains(evidence)
        && !enumerate_sync_pairs(t2, &evidence.input, m).contains(evidence)
}

/// Random pairs decided by the procedure and by the oracle. With `corrupt`
/// every verdict is flipped before comparison, which the harness must
/// detect.
pub fn random_suite(seed: u64, count: usize, bounds: &Bounds, corrupt: bool) -> Result<(Outcome, SuiteReport), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams::default();
    let options = bounds.options();
    let mut report = SuiteReport {
        seed,
        count,
        max_input: bounds.max_input,
        max_out: bounds.max_out,
        contained: 0,
        not_contained: 0,
        disagreements: 0,
        cases: Vec::with_capacity(count),
    };
    for case in 0..count {
        let (s1, s2) = random_pair(&mut rng, &params);
        let (t1, t2) = (s1.to_transducer(), s2.to_transducer());
        let oracle = bounded_containment(&t1, &t2, &inputs_up_to(t1.input_alphabet(), bounds.max_input), bounds.max_out);
        let mut verdict = origin_containment(&t1, &t2, &options)?;
        if corrupt {
            verdict = match verdict {
                Containment::Contained => Containment::NotContained(origin_containment::Counterexample {
                    input: Vec::new(),
                    evidence: None,
                }),
                Containment::NotContained(_) => Containment::Contained,
            };
        }
        let (name, confirmed, agree) = match &verdict {
            Containment::Contained => {
                report.contained += 1;
                ("contained", None, oracle.is_none())
            }
            Containment::NotContained(cex) => {
                report.not_contained += 1;
                let ok = cex.evidence.as_ref().is_some_and(|e| evidence_holds(&t1, &t2, e));
                ("not-contained", Some(cex.evidence.is_some()), ok)
            }
        };
        if !agree {
            report.disagreements += 1;
        }
        report.cases.push(SuiteCase {
            case,
            verdict: name.into(),
            confirmed,
            oracle: oracle.as_ref().map(pair_doc),
            agree,
        });
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let outcome = if report.disagreements == 0 { Outcome::ok(text) } else { Outcome::failed(text) };
    Ok((outcome, report))
}
