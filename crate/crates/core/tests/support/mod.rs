pub mod logic;
pub mod oracle;
pub mod replay;
