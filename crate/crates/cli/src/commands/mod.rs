pub mod seed;
pub mod sl2;
pub mod sl3;
pub mod typec;
pub mod verify;
