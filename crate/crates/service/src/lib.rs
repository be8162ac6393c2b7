//! Stateful HTTP service for exploring mutation histories.
//!
//! Each session holds a seed matrix and a tree of mutations; every node
//! carries a snapshot with the matrix, diagram, companion, companion basis
//! and relations. Requests on one session are serialized; sessions are
//! independent of each other.

pub mod config;
pub mod http;
pub mod journal;
pub mod session;

pub use config::ServiceConfig;
pub use http::{router, AppState, StateDoc};
pub use session::{Export, Session, SessionError, Snapshot};

use journal::Journal;

/// Binds `config.addr`, restores journaled sessions and serves until
/// interrupted.
pub async fn serve(config: ServiceConfig) -> std::io::Result<()> {
    let journal = config.journal_dir.as_ref().map(Journal::open).transpose()?;
    let state = AppState::new(journal.clone());
    if let Some(j) = &journal {
        let restored = j.restore()?;
        log::info!("restored {} sessions", restored.len());
        for s in restored {
            state.insert(s);
        }
    }
    let listener = tokio::net::TcpListener::bind(&config.addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
