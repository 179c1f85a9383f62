use std::fs;
use std::path::{Path, PathBuf};

/// Everything a subcommand produces, assembled in memory before any file is touched.
#[derive(Debug, Default)]
pub struct Artifacts {
    pub files: Vec<(String, String)>,
    pub stdout: String,
}

impl Artifacts {
    pub fn file(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    /// Writes every file through a temporary sibling and renames once all
    /// writes succeeded; on failure the temporaries are removed.
    pub fn commit(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        if self.files.is_empty() {
            return Ok(vec![]);
        }
        fs::create_dir_all(dir)?;
        let mut staged = Vec::with_capacity(self.files.len());
        for (name, contents) in &self.files {
            let tmp = dir.join(format!(".{name}.partial"));
            if let Err(e) = fs::write(&tmp, contents) {
                let _ = fs::remove_file(&tmp);
                for (t, _) in &staged {
                    let _ = fs::remove_file(t);
                }
                return Err(e);
            }
            staged.push((tmp, dir.join(name)));
        }
        let mut done = Vec::with_capacity(staged.len());
        for (tmp, dest) in &staged {
            fs::rename(tmp, dest)?;
            done.push(dest.clone());
        }
        Ok(done)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commit_writes_all_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut a = Artifacts::default();
        a.file("a.csv", "x\n1\n".into());
        a.file("b.json", "{}\n".into());
        let written = a.commit(&dir.path().join("nested")).unwrap();
        assert_eq!(written.len(), 2);
        assert_eq!(fs::read_to_string(dir.path().join("nested/a.csv")).unwrap(), "x\n1\n");
        let names: Vec<_> = fs::read_dir(dir.path().join("nested")).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 2);
    }

    #[test]
    fn unwritable_target_leaves_nothing_behind() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "").unwrap();
        let mut a = Artifacts::default();
        a.file("a.csv", "x\n".into());
        assert!(a.commit(&blocker.join("sub")).is_err());
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
