//! HTTP/JSON service over exercise workflows and sessions, persisted in an
//! append-only attempt log.

mod app;
pub mod config;
pub mod store;

use std::sync::Arc;

use axum::http::{HeaderValue, Method};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use app::{router, ApiError, AppState, AttemptResponse, SessionCreated, SessionState, StartupError, VerifyResponse};
pub use config::{ConfigError, ServiceConfig};

/// Builds the application for `config`, replaying the session log.
pub fn build(config: &ServiceConfig) -> Result<(Arc<AppState>, axum::Router), Box<dyn std::error::Error + Send + Sync>> {
    config.validate()?;
    let state = AppState::load(&config.workflows_dir, &config.session_store_path, config.time_budget())?;
    let mut app = router(state.clone());
    if !config.cors_origins.is_empty() {
        let origins = config
            .cors_origins
            .iter()
            .map(|o| HeaderValue::from_str(o))
            .collect::<Result<Vec<_>, _>>()?;
        app = app.layer(
            CorsLayer::new()
                .allow_origin(AllowOrigin::list(origins))
                .allow_methods([Method::GET, Method::POST])
                .allow_headers([axum::http::header::CONTENT_TYPE]),
        );
    }
    Ok((state, app))
}

/// Serves until ctrl-c.
pub async fn serve(config: ServiceConfig) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    let (state, app) = build(&config)?;
    let listener = tokio::net::TcpListener::bind(&config.listen_address).await?;
    tracing::info!(
        address = %listener.local_addr()?,
        sessions = state.session_ids().len(),
        "listening"
    );
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
