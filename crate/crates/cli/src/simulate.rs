//! Scheme execution and its JSON transcript.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sharedcache::delivery::{closed_form_delay, run_delivery, Transcript};
use sharedcache::model::profile_of;
use sharedcache::placement::{place, Placement};

use crate::exact::to_exact;
use crate::instance::Problem;

/// Payload settings. Without a file length, each subfile carries four bytes.
#[derive(Debug, Clone, Copy, Default)]
pub struct SimulateOptions {
    pub file_len: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransmissionRecord {
    pub round: usize,
    #[serde(rename = "Q")]
    pub q: Vec<usize>,
    #[serde(rename = "chi_Q")]
    pub chi_q: Vec<usize>,
    pub summands: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub payload_hex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptFile {
    pub transmissions: Vec<TransmissionRecord>,
    pub delay: String,
    pub per_user_ok: Vec<bool>,
    /// Multi-request mode: whether each cache-equipped user got all its files.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_physical_user_ok: Option<Vec<bool>>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub transcript: Transcript,
    pub file: TranscriptFile,
    /// Everyone decoded and the delay equals the closed form.
    pub passed: bool,
    pub diagnostics: Vec<String>,
}

pub fn transcript_file(tr: &Transcript) -> TranscriptFile {
    let transmissions = tr
        .transmissions
        .iter()
        .map(|tx| TransmissionRecord {
            round: tx.round,
            q: tx.caches.iter().map(|c| c + 1).collect(),
            chi_q: tx.targets().iter().map(|u| u + 1).collect(),
            summands: tx.summands.iter().map(|s| s.subfile.to_string()).collect(),
            payload_hex: tx.payload.as_ref().map(hex::encode),
        })
        .collect();
    TranscriptFile {
        transmissions,
        delay: to_exact(tr.delay),
        per_user_ok: tr.per_user_ok.clone(),
        per_physical_user_ok: None,
    }
}

pub fn simulate(problem: &Problem, opts: SimulateOptions) -> anyhow::Result<Outcome> {
    let placement = place(&problem.instance)?;
    let file_len = opts.file_len.unwrap_or(placement.subfiles_per_file() * 4);
    let placement = placement.attach_payloads(file_len, opts.seed)?;
    let transcript = run_delivery(&placement, &problem.association, &problem.demand)?;

    let mut diagnostics = Vec::new();
    for (user, ok) in transcript.per_user_ok.iter().enumerate() {
        if !ok {
            diagnostics.push(format!(
                "user {} did not recover file {}",
                user + 1,
                problem.demand.file_of(user) + 1
            ));
        }
    }
    let expected = closed_form_delay(&profile_of(&problem.association), placement.replication());
    if transcript.delay != expected {
        diagnostics.push(format!(
            "delay {} differs from closed form {}",
            to_exact(transcript.delay),
            to_exact(expected)
        ));
    }

    let mut file = transcript_file(&transcript);
    if let Some(mri) = &problem.multirequest {
        let physical: Vec<bool> = (0..mri.num_users())
            .map(|u| mri.requests_of(u).iter().all(|&k| transcript.per_user_ok[k]))
            .collect();
        for (u, ok) in physical.iter().enumerate() {
            if !ok {
                diagnostics.push(format!("multi-request user {} missed a file", u + 1));
            }
        }
        file.per_physical_user_ok = Some(physical);
    }
    Ok(Outcome {
        passed: diagnostics.is_empty(),
        transcript,
        file,
        diagnostics,
    })
}

/// Cache index (1-based) → stored subfiles as `n:{T}` strings.
pub fn placement_json(placement: &Placement) -> Value {
    let mut map = Map::new();
    for cache in 0..placement.num_caches() {
        let items = placement
            .cache_contents(cache)
            .iter()
            .map(|s| Value::String(s.to_string()))
            .collect();
        map.insert((cache + 1).to_string(), Value::Array(items));
    }
    Value::Object(map)
}
