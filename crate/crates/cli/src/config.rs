//! Flat `key=value` configuration files mirroring the CLI flags.
//!
//! Keys use the long flag names (`functional`, `M`, `beta`, `table`,
//! `variant`, ...). Values given on the command line always win; the file
//! only fills flags that were left unset. Lines starting with `#` and blank
//! lines are ignored.

use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Default, Clone)]
pub struct Config {
    entries: HashMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| format!("config key {key}={raw}: {e}")),
        }
    }

    pub fn get_flag(&self, key: &str) -> Result<bool, String> {
        match self.entries.get(key).map(String::as_str) {
            None => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(other) => Err(format!("config key {key}={other}: expected a boolean")),
        }
    }
}

/// Worker count for row sweeps: the `BOHR_THREADS` environment variable, or 1.
pub fn thread_count() -> usize {
    std::env::var("BOHR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Maps `f` over `items` on up to [`thread_count`] workers; results keep the
/// input order, so output assembly stays deterministic regardless of the
/// worker count.
pub fn parallel_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = thread_count().min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let n = items.len();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let (tx, rx) = std::sync::mpsc::channel::<(usize, R)>();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            scope.spawn(|| {
                let tx = tx;
                loop {
                    let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if idx >= n {
                        break;
                    }
                    tx.send((idx, f(&items[idx]))).expect("receiver outlives the scope");
                }
            });
        }
    });
    drop(tx);
    let mut slots: Vec<Option<R>> = (0..n).map(|_| None).collect();
    for (idx, value) in rx {
        slots[idx] = Some(value);
    }
    slots.into_iter().map(|s| s.expect("every slot filled")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_lines() {
        let dir = std::env::temp_dir().join("bohr-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sample.conf");
        std::fs::write(&path, "# comment\nfunctional=cor3.8\nM=0.14\nquick=true\n").unwrap();
        let cfg = Config::load(&path).unwrap();
        assert_eq!(cfg.get("functional"), Some("cor3.8"));
        assert_eq!(cfg.get_parsed::<f64>("M").unwrap(), Some(0.14));
        assert!(cfg.get_flag("quick").unwrap());
        assert_eq!(cfg.get_parsed::<f64>("tol").unwrap(), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        let dir = std::env::temp_dir().join("bohr-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("broken.conf");
        std::fs::write(&path, "no equals sign\n").unwrap();
        assert!(Config::load(&path).is_err());
    }

    #[test]
    fn parallel_map_preserves_order() {
        let items: Vec<usize> = (0..100).collect();
        let out = parallel_map(items, |&x| x * x);
        assert_eq!(out[13], 169);
        assert_eq!(out.len(), 100);
    }
}
