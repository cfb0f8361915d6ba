#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ceval {

enum class Arch { x86_64, aarch64, riscv64 };

std::string_view arch_name(Arch arch);

// Raises unsupported_arch for anything outside {x86_64, aarch64, riscv64};
// accepts the common aliases (amd64, arm64, riscv).
Arch parse_arch(std::string_view name);
std::optional<Arch> try_parse_arch(std::string_view name);

Arch host_arch();

// Line-comment leader understood by the GNU assembler for the target.
std::string_view comment_leader(Arch arch);

// The template's splice point: comment leader + " KERNEL_HERE".
std::string marker_line(Arch arch);

// One-paragraph description of the C calling convention, embedded in prompts.
std::string_view abi_notes(Arch arch);

} // namespace ceval
