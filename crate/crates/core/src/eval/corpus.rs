use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frontend::{Language, SourceUnit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Correct,
    Incorrect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub problem_id: String,
    pub language: Language,
    pub verdict: Verdict,
    pub source: String,
    pub submission_id: String,
}

impl Submission {
    pub fn unit(&self) -> SourceUnit {
        SourceUnit::new(self.language, self.source.clone(), self.submission_id.clone())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub submissions: Vec<Submission>,
    /// 1-based line numbers of malformed or rejected lines.
    pub skipped_lines: Vec<usize>,
    pub sha256: String,
}

/// Reads a JSONL corpus. Blank lines are ignored; malformed lines, blank
/// sources and repeated submission ids are skipped and counted.
pub fn ingest(path: &Path) -> Result<Corpus> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut corpus = parse_corpus(&bytes);
    if corpus.submissions.is_empty() {
        return Err(Error::EmptyCorpus(path.to_path_buf()));
    }
    corpus.skipped_lines.sort_unstable();
    Ok(corpus)
}

pub fn parse_corpus(bytes: &[u8]) -> Corpus {
    use sha2::Digest;
    let text = String::from_utf8_lossy(bytes);
    let mut corpus = Corpus {
        sha256: hex::encode(sha2::Sha256::digest(bytes)),
        ..Corpus::default()
    };
    let mut ids = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Submission>(line) {
            Ok(s) if !s.source.trim().is_empty() && ids.insert(s.submission_id.clone()) => {
                corpus.submissions.push(s)
            }
            _ => corpus.skipped_lines.push(i + 1),
        }
    }
    corpus
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Monolingual,
    Crosslingual,
}

impl std::str::FromStr for Setting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mono" | "monolingual" => Ok(Setting::Monolingual),
            "cross" | "crosslingual" => Ok(Setting::Crosslingual),
            other => Err(format!("unknown setting `{other}`")),
        }
    }
}

/// Row label: the language for monolingual runs, `(target, source)` for
/// cross-lingual ones.
pub fn language_pair_label(target: Language, source: Language) -> String {
    if target == source {
        target.to_string()
    } else {
        format!("({target}, {source})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triplet {
    pub id: usize,
    pub pos1: Submission,
    pub pos2: Submission,
    pub neg: Submission,
    pub setting: Setting,
    pub target_lang: Language,
    pub source_lang: Language,
}

impl Triplet {
    pub fn problem_id(&self) -> &str {
        &self.pos1.problem_id
    }

    pub fn language_pair(&self) -> String {
        language_pair_label(self.target_lang, self.source_lang)
    }
}

#[derive(Debug, Clone, Default)]
pub struct TripletPlan {
    pub triplets: Vec<Triplet>,
    /// (problem id, reason) for problems that yielded nothing.
    pub skipped: Vec<(String, String)>,
}

/// Samples up to `per_problem` triplets for every problem, without reusing a
/// submission within a problem. Problems are visited in id order and each
/// gets its own generator derived from `seed`, so adding a problem does not
/// perturb the others.
pub fn build_triplets(
    subs: &[Submission],
    setting: Setting,
    target_lang: Language,
    source_lang: Language,
    seed: u64,
    per_problem: usize,
) -> TripletPlan {
    let source_lang = match setting {
        Setting::Monolingual => target_lang,
        Setting::Crosslingual => source_lang,
    };
    let mut by_problem: BTreeMap<&str, Vec<&Submission>> = BTreeMap::new();
    for s in subs {
        by_problem.entry(&s.problem_id).or_default().push(s);
    }
    let mut plan = TripletPlan::default();
    for (problem, mut members) in by_problem {
        members.sort_by(|a, b| a.submission_id.cmp(&b.submission_id));
        let pick = |lang: Language, verdict: Verdict| -> Vec<&Submission> {
            members
                .iter()
                .copied()
                .filter(|s| s.language == lang && s.verdict == verdict)
                .collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(problem_seed(seed, problem));
        let mut target_ok = pick(target_lang, Verdict::Correct);
        let mut negs = pick(source_lang, Verdict::Incorrect);
        target_ok.shuffle(&mut rng);
        negs.shuffle(&mut rng);
        let mut made = 0;
        if setting == Setting::Monolingual {
            while made < per_problem && target_ok.len() >= 2 * made + 2 && negs.len() > made {
                plan.triplets.push(Triplet {
                    id: 0,
                    pos1: target_ok[2 * made].clone(),
                    pos2: target_ok[2 * made + 1].clone(),
                    neg: negs[made].clone(),
                    setting,
                    target_lang,
                    source_lang,
                });
                made += 1;
            }
        } else {
            let mut source_ok = pick(source_lang, Verdict::Correct);
            source_ok.shuffle(&mut rng);
            while made < per_problem && target_ok.len() > made && source_ok.len() > made && negs.len() > made {
                plan.triplets.push(Triplet {
                    id: 0,
                    pos1: target_ok[made].clone(),
                    pos2: source_ok[made].clone(),
                    neg: negs[made].clone(),
                    setting,
                    target_lang,
                    source_lang,
                });
                made += 1;
            }
        }
        if made == 0 {
            let reason = if negs.is_empty() {
                format!("no incorrect {source_lang} submission")
            } else {
                "not enough correct submissions".to_string()
            };
            plan.skipped.push((problem.to_string(), reason));
        }
    }
    plan
}

fn problem_seed(seed: u64, problem: &str) -> u64 {
    use sha2::Digest;
    let digest = sha2::Sha256::digest(problem.as_bytes());
    seed ^ u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(problem: &str, lang: Language, verdict: Verdict, id: &str) -> Submission {
        Submission {
            problem_id: problem.into(),
            language: lang,
            verdict,
            source: "print(1)\n".into(),
            submission_id: id.into(),
        }
    }

    fn line(s: &Submission) -> String {
        serde_json::to_string(s).unwrap()
    }

    #[test]
    fn ingest_counts_malformed_lines() {
        let a = sub("p", Language::Python, Verdict::Correct, "a");
        let b = sub("p", Language::Python, Verdict::Correct, "b");
        let c = sub("p", Language::Python, Verdict::Incorrect, "c");
        let text = format!("{}\n{{not json\n{}\n\n{}\n", line(&a), line(&b), line(&c));
        let corpus = parse_corpus(text.as_bytes());
        assert_eq!(corpus.submissions.len(), 3);
        assert_eq!(corpus.skipped_lines, vec![2]);
        assert_eq!(corpus.sha256.len(), 64);
    }

    #[test]
    fn duplicate_ids_and_blank_sources_are_skipped() {
        let a = sub("p", Language::Python, Verdict::Correct, "a");
        let mut blank = sub("p", Language::Python, Verdict::Correct, "z");
        blank.source = "  \n".into();
        let text = format!("{}\n{}\n{}\n", line(&a), line(&a), line(&blank));
        let corpus = parse_corpus(text.as_bytes());
        assert_eq!(corpus.submissions.len(), 1);
        assert_eq!(corpus.skipped_lines, vec![2, 3]);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        std::fs::write(&path, "garbage\n").unwrap();
        assert!(matches!(ingest(&path), Err(Error::EmptyCorpus(_))));
        assert!(matches!(ingest(&dir.path().join("missing")), Err(Error::Io { .. })));
    }

    #[test]
    fn one_triplet_per_minimal_problem() {
        let subs = vec![
            sub("p", Language::Python, Verdict::Correct, "a"),
            sub("p", Language::Python, Verdict::Correct, "b"),
            sub("p", Language::Python, Verdict::Incorrect, "c"),
            sub("q", Language::Python, Verdict::Correct, "d"),
        ];
        let plan = build_triplets(&subs, Setting::Monolingual, Language::Python, Language::Python, 0, 1);
        assert_eq!(plan.triplets.len(), 1);
        assert_eq!(plan.triplets[0].neg.submission_id, "c");
        assert_eq!(plan.skipped.len(), 1);
        assert_eq!(plan.skipped[0].0, "q");
    }

    #[test]
    fn crosslingual_roles() {
        let subs = vec![
            sub("p", Language::Python, Verdict::Correct, "a"),
            sub("p", Language::Java, Verdict::Correct, "b"),
            sub("p", Language::Java, Verdict::Incorrect, "c"),
            sub("p", Language::Python, Verdict::Incorrect, "d"),
        ];
        let plan = build_triplets(&subs, Setting::Crosslingual, Language::Python, Language::Java, 0, 1);
        let t = &plan.triplets[0];
        assert_eq!((t.pos1.language, t.pos2.language, t.neg.language), (Language::Python, Language::Java, Language::Java));
        assert_eq!(t.language_pair(), "(Python, Java)");
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let mut subs = Vec::new();
        for p in 0..5 {
            for i in 0..6 {
                let v = if i < 4 { Verdict::Correct } else { Verdict::Incorrect };
                subs.push(sub(&format!("p{p}"), Language::Java, v, &format!("{p}-{i}")));
            }
        }
        let a = build_triplets(&subs, Setting::Monolingual, Language::Java, Language::Java, 7, 2);
        let b = build_triplets(&subs, Setting::Monolingual, Language::Java, Language::Java, 7, 2);
        assert_eq!(a.triplets, b.triplets);
        assert_eq!(a.triplets.len(), 10);
    }
}
