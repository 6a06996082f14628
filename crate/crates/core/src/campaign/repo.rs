//! Commit-history sources: real git repositories (driven through the `git`
//! binary) and synthetic JSON manifests for hardware-free runs.
//!
//! Both produce the same chronological, first-parent, filtered commit list
//! so every later stage is source-agnostic.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::config::{CommitRange, Granularity, PipelineConfig, RepoSource};
use crate::error::{Error, Result};
use crate::model::CommitRef;

/// One entry of the synthetic repository manifest (a JSON list of these).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestCommit {
    pub id: String,
    pub date: DateTime<Utc>,
    pub message: String,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default)]
    pub branches: Vec<String>,
    #[serde(default = "default_true")]
    pub build_ok: bool,
    #[serde(default = "default_true")]
    pub test_ok: bool,
}

fn default_true() -> bool {
    true
}

/// An opened commit source.
pub enum Repository {
    Manifest {
        commits: Vec<ManifestCommit>,
        by_id: HashMap<String, usize>,
    },
    Git(GitRepo),
}

impl Repository {
    /// Open the configured source. Git URLs and local paths are cloned into
    /// `workdir/clone` so measurement never mutates the original repository.
    pub fn open(cfg: &PipelineConfig, workdir: &Path) -> Result<Self> {
        match &cfg.repo_source {
            RepoSource::Manifest(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Repo(format!("cannot read manifest {path:?}: {e}")))?;
                let mut commits: Vec<ManifestCommit> = serde_json::from_str(&text)
                    .map_err(|e| Error::Repo(format!("manifest {path:?}: {e}")))?;
                commits.sort_by_key(|c| c.date);
                for c in &commits {
                    if c.id.is_empty() || c.id.contains([',', '\n', '\r']) {
                        return Err(Error::Repo(format!(
                            "manifest commit id {:?} is empty or contains a csv delimiter",
                            c.id
                        )));
                    }
                }
                let by_id = commits
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (c.id.clone(), i))
                    .collect();
                Ok(Repository::Manifest { commits, by_id })
            }
            RepoSource::Git(source) => Ok(Repository::Git(GitRepo::open(source, workdir)?)),
        }
    }

    /// Chronological (oldest-first) first-parent commits after granularity
    /// and range filtering.
    pub fn collect_commits(&self, cfg: &PipelineConfig) -> Result<Vec<CommitRef>> {
        let mut commits = match self {
            Repository::Manifest { commits, by_id } => {
                let mut refs: Vec<CommitRef> = commits
                    .iter()
                    .map(|c| {
                        let mut r = CommitRef::new(c.id.clone(), c.date, c.message.clone());
                        r.tags = c.tags.clone();
                        r
                    })
                    .collect();
                refs = match &cfg.commit_range {
                    CommitRange::All | CommitRange::MaxCount(_) => refs,
                    CommitRange::Range(range) => {
                        let (from, to) = split_range(range)?;
                        let fi = *by_id
                            .get(from)
                            .ok_or_else(|| Error::Repo(format!("unknown range ref {from:?}")))?;
                        let ti = *by_id
                            .get(to)
                            .ok_or_else(|| Error::Repo(format!("unknown range ref {to:?}")))?;
                        if fi >= ti {
                            return Err(Error::Repo(format!(
                                "range {range:?} is empty or reversed"
                            )));
                        }
                        refs[fi + 1..=ti].to_vec()
                    }
                };
                match cfg.granularity {
                    Granularity::Commit => refs,
                    Granularity::Tag => refs.into_iter().filter(|r| !r.tags.is_empty()).collect(),
                    Granularity::Branch => {
                        let heads: Vec<&str> = commits
                            .iter()
                            .filter(|c| !c.branches.is_empty())
                            .map(|c| c.id.as_str())
                            .collect();
                        refs.into_iter()
                            .filter(|r| heads.contains(&r.id.as_str()))
                            .collect()
                    }
                }
            }
            Repository::Git(repo) => repo.collect(cfg)?,
        };
        if let CommitRange::MaxCount(n) = cfg.commit_range {
            let n = n as usize;
            if commits.len() > n {
                commits = commits.split_off(commits.len() - n);
            }
        }
        if commits.is_empty() {
            return Err(Error::EmptyHistory);
        }
        Ok(commits)
    }

    /// Whether the synthetic manifest marks this commit as building cleanly.
    /// Real repositories answer true; their builds actually run.
    pub fn manifest_build_ok(&self, id: &str) -> bool {
        match self {
            Repository::Manifest { commits, by_id } => {
                by_id.get(id).is_none_or(|&i| commits[i].build_ok)
            }
            Repository::Git(_) => true,
        }
    }

    /// Simulated test exit status for manifest commits (0 on success).
    pub fn manifest_test_exit(&self, id: &str) -> i32 {
        match self {
            Repository::Manifest { commits, by_id } => {
                by_id
                    .get(id)
                    .map_or(0, |&i| if commits[i].test_ok { 0 } else { 1 })
            }
            Repository::Git(_) => 0,
        }
    }

    pub fn as_git(&self) -> Option<&GitRepo> {
        match self {
            Repository::Git(g) => Some(g),
            Repository::Manifest { .. } => None,
        }
    }
}

fn split_range(range: &str) -> Result<(&str, &str)> {
    range
        .split_once("..")
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .ok_or_else(|| Error::Repo(format!("commit_range {range:?} is not of the form a..b")))
}

/// A cloned git repository driven through the `git` CLI.
pub struct GitRepo {
    clone_dir: PathBuf,
}

impl GitRepo {
    fn open(source: &str, workdir: &Path) -> Result<Self> {
        let clone_dir = workdir.join("clone");
        if !clone_dir.join(".git").exists() {
            std::fs::create_dir_all(workdir)?;
            let out = Command::new("git")
                .args(["clone", "--quiet", source])
                .arg(&clone_dir)
                .output()
                .map_err(|e| Error::Repo(format!("cannot run git: {e}")))?;
            if !out.status.success() {
                return Err(Error::Repo(format!(
                    "git clone of {source:?} failed: {}",
                    String::from_utf8_lossy(&out.stderr).trim()
                )));
            }
        }
        Ok(GitRepo { clone_dir })
    }

    fn git(&self, args: &[&str]) -> Result<String> {
        let out = Command::new("git")
            .arg("-C")
            .arg(&self.clone_dir)
            .args(args)
            .output()
            .map_err(|e| Error::Repo(format!("cannot run git: {e}")))?;
        if !out.status.success() {
            return Err(Error::Repo(format!(
                "git {} failed: {}",
                args.first().unwrap_or(&""),
                String::from_utf8_lossy(&out.stderr).trim()
            )));
        }
        String::from_utf8(out.stdout)
            .map_err(|e| Error::Repo(format!("git output is not utf-8: {e}")))
    }

    fn collect(&self, cfg: &PipelineConfig) -> Result<Vec<CommitRef>> {
        // Record format: sha / parents / tree / author date / full message,
        // unit-separated, record-terminated, so multi-line messages survive.
        let format = "--format=%H%x1f%P%x1f%T%x1f%aI%x1f%B%x1e";
        let mut args = vec!["log", "--first-parent", "--reverse", format];
        let range;
        if let CommitRange::Range(r) = &cfg.commit_range {
            split_range(r)?;
            range = r.clone();
            args.push(&range);
        }
        let raw = self.git(&args)?;

        struct Row {
            commit: CommitRef,
            parents: Vec<String>,
            tree: String,
        }
        let mut rows = Vec::new();
        for record in raw.split('\x1e') {
            let record = record.trim_matches(['\n', '\r']);
            if record.is_empty() {
                continue;
            }
            let fields: Vec<&str> = record.splitn(5, '\x1f').collect();
            if fields.len() != 5 {
                return Err(Error::Repo(format!(
                    "unexpected git log record: {record:?}"
                )));
            }
            let date = DateTime::parse_from_rfc3339(fields[3])
                .map_err(|e| Error::Repo(format!("bad author date {:?}: {e}", fields[3])))?
                .with_timezone(&Utc);
            let parents: Vec<String> = fields[1].split_whitespace().map(String::from).collect();
            let mut commit = CommitRef::new(fields[0], date, fields[4].trim_end());
            commit.parent_id = parents.first().cloned();
            rows.push(Row {
                commit,
                parents,
                tree: fields[2].to_string(),
            });
        }

        // Preprocessing: drop merge commits whose tree is identical to their
        // first parent's (they change nothing on the first-parent line).
        let tree_of: HashMap<&str, &str> = rows
            .iter()
            .map(|r| (r.commit.id.as_str(), r.tree.as_str()))
            .collect();
        let keep: Vec<bool> = rows
            .iter()
            .map(|r| {
                if r.parents.len() < 2 {
                    return true;
                }
                match tree_of.get(r.parents[0].as_str()) {
                    Some(parent_tree) => *parent_tree != r.tree,
                    None => true, // parent outside the range: keep
                }
            })
            .collect();

        let tags = self.refs_by_commit("refs/tags")?;
        let heads = self.refs_by_commit("refs/heads")?;

        let mut commits = Vec::new();
        for (row, keep) in rows.into_iter().zip(keep) {
            if !keep {
                continue;
            }
            let mut commit = row.commit;
            commit.tags = tags.get(&commit.id).cloned().unwrap_or_default();
            match cfg.granularity {
                Granularity::Commit => commits.push(commit),
                Granularity::Tag => {
                    if !commit.tags.is_empty() {
                        commits.push(commit);
                    }
                }
                Granularity::Branch => {
                    if heads.contains_key(&commit.id) {
                        commits.push(commit);
                    }
                }
            }
        }
        Ok(commits)
    }

    /// Map commit sha -> short ref names under `prefix`, with annotated tags
    /// peeled to the commits they point at.
    fn refs_by_commit(&self, prefix: &str) -> Result<HashMap<String, Vec<String>>> {
        let raw = self.git(&[
            "for-each-ref",
            "--format=%(objectname)%1f%(*objectname)%1f%(refname:short)",
            prefix,
        ])?;
        let mut map: HashMap<String, Vec<String>> = HashMap::new();
        for line in raw.lines() {
            let fields: Vec<&str> = line.splitn(3, '\x1f').collect();
            if fields.len() != 3 {
                continue;
            }
            let target = if fields[1].is_empty() {
                fields[0]
            } else {
                fields[1]
            };
            map.entry(target.to_string())
                .or_default()
                .push(fields[2].to_string());
        }
        for names in map.values_mut() {
            names.sort();
        }
        Ok(map)
    }

    /// Check out `commit` into a per-commit cached worktree and return its
    /// path. An existing directory is reused, keeping build artifacts.
    pub fn checkout(&self, commit_id: &str, checkouts_dir: &Path) -> Result<PathBuf> {
        let dir = checkouts_dir.join(commit_id);
        if dir.exists() {
            return Ok(dir);
        }
        std::fs::create_dir_all(checkouts_dir)?;
        self.git(&[
            "worktree",
            "add",
            "--detach",
            "--force",
            dir.to_str()
                .ok_or_else(|| Error::Repo("non-utf8 checkout path".into()))?,
            commit_id,
        ])?;
        Ok(dir)
    }
}
