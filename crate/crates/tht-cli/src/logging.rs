//! Minimal stderr logging gated by the `THT_LOG_LEVEL` environment variable
//! (`error`, `info`, or `debug`; default `info`).

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Error,
    Info,
    Debug,
}

pub fn level() -> Level {
    static LEVEL: OnceLock<Level> = OnceLock::new();
    *LEVEL.get_or_init(|| match std::env::var("THT_LOG_LEVEL").as_deref() {
        Ok("error") => Level::Error,
        Ok("debug") => Level::Debug,
        _ => Level::Info,
    })
}

pub fn error(msg: &str) {
    eprintln!("tht: error: {msg}");
}

pub fn info(msg: &str) {
    if level() >= Level::Info {
        eprintln!("tht: {msg}");
    }
}

pub fn debug(msg: &str) {
    if level() >= Level::Debug {
        eprintln!("tht: debug: {msg}");
    }
}
