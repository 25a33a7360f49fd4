fn main() -> std::process::ExitCode {
    joinendo::cli::main_entry()
}
