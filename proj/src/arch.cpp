#include "ceval/arch.hpp"

#include <sys/utsname.h>

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

std::string_view arch_name(Arch arch) {
    switch (arch) {
    case Arch::x86_64: return "x86_64";
    case Arch::aarch64: return "aarch64";
    case Arch::riscv64: return "riscv64";
    }
    return "x86_64";
}

std::optional<Arch> try_parse_arch(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "x86_64" || n == "x86-64" || n == "amd64" || n == "x86")
        return Arch::x86_64;
    if (n == "aarch64" || n == "arm64" || n == "arm")
        return Arch::aarch64;
    if (n == "riscv64" || n == "riscv" || n == "risc-v" || n == "rv64")
        return Arch::riscv64;
    return std::nullopt;
}

Arch parse_arch(std::string_view name) {
    if (auto arch = try_parse_arch(name))
        return *arch;
    raise(errc::unsupported_arch, "unsupported architecture \"" + std::string(name) +
                                      "\" (supported: x86_64, aarch64, riscv64)");
}

Arch host_arch() {
    struct utsname un{};
    if (uname(&un) != 0)
        return Arch::x86_64;
    if (auto arch = try_parse_arch(un.machine))
        return *arch;
    return Arch::x86_64;
}

std::string_view comment_leader(Arch arch) {
    // aarch64 gas treats '#' as an immediate prefix; '//' is its line comment.
    return arch == Arch::aarch64 ? "//" : "#";
}

std::string marker_line(Arch arch) {
    return std::string(comment_leader(arch)) + " KERNEL_HERE";
}

std::string_view abi_notes(Arch arch) {
    switch (arch) {
    case Arch::x86_64:
        return "System V AMD64: integer/pointer arguments in rdi, rsi, rdx, rcx, r8, r9; "
               "float/double arguments in xmm0-xmm7; return values in rax / xmm0; "
               "rbx, rbp, r12-r15 are callee-saved; the stack is 16-byte aligned at calls.";
    case Arch::aarch64:
        return "AAPCS64: integer/pointer arguments in x0-x7; floating-point arguments in "
               "v0-v7; return values in x0 / v0; x19-x28 and sp are callee-saved; "
               "the stack pointer stays 16-byte aligned.";
    case Arch::riscv64:
        return "RISC-V LP64D: integer/pointer arguments in a0-a7; floating-point arguments "
               "in fa0-fa7; return values in a0 / fa0; s0-s11 are callee-saved; "
               "the stack pointer stays 16-byte aligned.";
    }
    return "";
}

} // namespace ceval
