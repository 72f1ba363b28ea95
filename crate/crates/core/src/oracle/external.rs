//! Optional external-solver escape hatch: the canonical script is written to
//! a temporary file and handed to a user-supplied command.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use crate::domain::Verdict;

/// Runs `cmd_template` (with `{file}` replaced by the script path) and maps
/// the first stdout token to a verdict. Nonzero exit, timeout, or spawn
/// failure all yield UNKNOWN.
pub(crate) fn run_external(cmd_template: &str, script_text: &str, timeout: Duration) -> Verdict {
    let mut file = match tempfile::Builder::new().suffix(".smt2").tempfile() {
        Ok(f) => f,
        Err(e) => {
            log::warn!("external solver: cannot create temp file: {e}");
            return Verdict::Unknown;
        }
    };
    if file.write_all(script_text.as_bytes()).is_err() {
        return Verdict::Unknown;
    }
    let path = file.path().to_string_lossy().to_string();
    let cmd = cmd_template.replace("{file}", &path);

    let mut child = match Command::new("sh")
        .arg("-c")
        .arg(&cmd)
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => {
            log::warn!("external solver: spawn failed: {e}");
            return Verdict::Unknown;
        }
    };

    let started = Instant::now();
    loop {
        match child.try_wait() {
            Ok(Some(status)) => {
                if !status.success() {
                    return Verdict::Unknown;
                }
                break;
            }
            Ok(None) => {
                if started.elapsed() > timeout {
                    let _ = child.kill();
                    let _ = child.wait();
                    log::warn!("external solver: timed out after {timeout:?}");
                    return Verdict::Unknown;
                }
                std::thread::sleep(Duration::from_millis(10));
            }
            Err(_) => return Verdict::Unknown,
        }
    }

    let output = match child.wait_with_output() {
        Ok(o) => o,
        Err(_) => return Verdict::Unknown,
    };
    let stdout = String::from_utf8_lossy(&output.stdout);
    match stdout.split_whitespace().next() {
        Some("sat") => Verdict::Sat,
        Some("unsat") => Verdict::Unsat,
        _ => Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_first_token() {
        assert_eq!(
            run_external("echo sat", "", Duration::from_secs(5)),
            Verdict::Sat
        );
        assert_eq!(
            run_external("echo unsat extra", "", Duration::from_secs(5)),
            Verdict::Unsat
        );
        assert_eq!(
            run_external("echo wat", "", Duration::from_secs(5)),
            Verdict::Unknown
        );
    }

    #[test]
    fn nonzero_exit_is_unknown() {
        assert_eq!(
            run_external("false", "", Duration::from_secs(5)),
            Verdict::Unknown
        );
    }

    #[test]
    fn file_placeholder_is_substituted() {
        assert_eq!(
            run_external("cat {file}", "unsat\n", Duration::from_secs(5)),
            Verdict::Unsat
        );
    }
}
