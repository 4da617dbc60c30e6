//! Memory–delay curves for a set of association profiles.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use sharedcache::bounds::t_star;
use sharedcache::model::Profile;
use sharedcache::Rational;

use crate::exact::{to_decimal, to_exact};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileSelection {
    /// Every partition of `K` into at most `Λ` parts.
    All,
    List(Vec<Profile>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub num_users: usize,
    pub num_caches: usize,
    pub profiles: ProfileSelection,
    /// Normalized cache sizes; `None` means the anchors `i/Λ`.
    pub gammas: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRow {
    pub profile: Profile,
    pub gamma: Rational,
    pub t_star: Rational,
}

/// Parses `"5,5,5,5,5,5;30"`: profiles separated by `;`, counts by `,`.
/// Missing trailing caches count as empty.
pub fn parse_profiles(text: &str, num_users: usize, num_caches: usize) -> Result<ProfileSelection> {
    if text.trim() == "all" {
        return Ok(ProfileSelection::All);
    }
    let mut out = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let mut counts = chunk
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .with_context(|| format!("bad count in profile {chunk:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        if counts.len() > num_caches {
            bail!("profile {chunk:?} has more than {num_caches} parts");
        }
        counts.resize(num_caches, 0);
        let profile = Profile::new(counts).with_context(|| format!("profile {chunk:?}"))?;
        if profile.num_users() != num_users {
            bail!(
                "profile {chunk:?} sums to {}, expected {num_users}",
                profile.num_users()
            );
        }
        out.push(profile);
    }
    if out.is_empty() {
        bail!("empty profile list");
    }
    Ok(ProfileSelection::List(out))
}

impl SweepSpec {
    pub fn profiles(&self) -> Vec<Profile> {
        match &self.profiles {
            ProfileSelection::All => Profile::all(self.num_users, self.num_caches),
            ProfileSelection::List(list) => list.clone(),
        }
    }

    pub fn gammas(&self) -> Vec<Rational> {
        self.gammas.clone().unwrap_or_else(|| {
            (0..=self.num_caches)
                .map(|i| Rational::new(i as i128, self.num_caches as i128))
                .collect()
        })
    }

    /// Rows grouped by profile in input order, gammas ascending within each.
    pub fn run(&self) -> Result<Vec<CurveRow>> {
        if self.num_caches == 0 || self.num_caches > self.num_users {
            bail!("need 1 <= caches <= K");
        }
        let gammas = self.gammas();
        let profiles = self.profiles();
        for p in &profiles {
            if p.num_caches() != self.num_caches || p.num_users() != self.num_users {
                bail!(
                    "profile {:?} does not match K={} caches={}",
                    p.counts(),
                    self.num_users,
                    self.num_caches
                );
            }
        }
        let curves: Vec<Result<Vec<CurveRow>>> = profiles
            .par_iter()
            .map(|profile| {
                gammas
                    .iter()
                    .map(|&gamma| {
                        Ok(CurveRow {
                            profile: profile.clone(),
                            gamma,
                            t_star: t_star(profile, gamma)?,
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(curves.into_iter().collect::<Result<Vec<_>>>()?.concat())
    }
}

fn profile_label(p: &Profile) -> String {
    p.counts().iter().map(ToString::to_string).collect::<Vec<_>>().join("-")
}

pub fn render_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("profile,gamma,T_star,gamma_exact,T_star_exact\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            profile_label(&r.profile),
            to_decimal(r.gamma),
            to_decimal(r.t_star),
            to_exact(r.gamma),
            to_exact(r.t_star)
        )
        .expect("writing to a String");
    }
    out
}

#[derive(Serialize)]
struct JsonPoint {
    gamma: String,
    #[serde(rename = "T_star")]
    t_star: String,
    gamma_exact: String,
    #[serde(rename = "T_star_exact")]
    t_star_exact: String,
}

#[derive(Serialize)]
struct JsonCurve {
    profile: Vec<usize>,
    points: Vec<JsonPoint>,
}

pub fn render_json(rows: &[CurveRow]) -> String {
    let mut curves: Vec<JsonCurve> = Vec::new();
    for r in rows {
        let point = JsonPoint {
            gamma: to_decimal(r.gamma),
            t_star: to_decimal(r.t_star),
            gamma_exact: to_exact(r.gamma),
            t_star_exact: to_exact(r.t_star),
        };
        match curves.last_mut() {
            Some(c) if c.profile == r.profile.counts() => c.points.push(point),
            _ => curves.push(JsonCurve {
                profile: r.profile.counts().to_vec(),
                points: vec![point],
            }),
        }
    }
    serde_json::to_string_pretty(&curves).expect("curves serialize")
}

pub fn render(rows: &[CurveRow], format: Format) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_profile_lists() {
        let sel = parse_profiles("5,5,5,5,5,5; 30", 30, 6).unwrap();
        let ProfileSelection::List(ps) = sel else { panic!() };
        assert_eq!(ps[1].counts(), [30, 0, 0, 0, 0, 0]);
        assert_eq!(parse_profiles("all", 30, 6).unwrap(), ProfileSelection::All);
        assert!(parse_profiles("", 30, 6).is_err());
        assert!(parse_profiles("10,10", 30, 6).is_err());
        assert!(parse_profiles("1,29", 30, 6).is_err());
        assert!(parse_profiles("5,5,5,5,5,3,2", 30, 6).is_err());
    }

    #[test]
    fn figure_rows() {
        let spec = SweepSpec {
            num_users: 30,
            num_caches: 6,
            profiles: parse_profiles("5,5,5,5,5,5;30", 30, 6).unwrap(),
            gammas: None,
        };
        let rows = spec.run().unwrap();
        assert_eq!(rows.len(), 14);
        assert_eq!(rows[1].t_star, Rational::new(25, 2));
        // only the local caching gain: 30(1 − γ)
        for r in &rows[7..] {
            assert_eq!(
                r.t_star,
                Rational::from_integer(30) * (Rational::from_integer(1) - r.gamma)
            );
        }
        let csv = render_csv(&rows);
        assert!(csv
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("5-5-5-5-5-5,0.166666666667,12.5000000000,1/6,25/2"));
        assert_eq!(csv, render_csv(&spec.run().unwrap()));
        let json: serde_json::Value = serde_json::from_str(&render_json(&rows)).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 2);
    }
}
