#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcx {

using Bytes = std::vector<uint8_t>;

std::string to_hex(std::span<const uint8_t> data);
std::optional<Bytes> from_hex(std::string_view hex);

std::string sha256_hex(std::span<const uint8_t> data);
/// Streaming hash of a file on disk; throws on I/O failure.
std::string sha256_file(const std::filesystem::path& path);

std::string base64_encode(std::span<const uint8_t> data);

Bytes read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const uint8_t> data);

std::string ascii_lower(std::string_view s);
std::string trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Little/big-endian scalar reads out of raw buffers. Caller checks bounds.
uint16_t rd_le16(const uint8_t* p);
uint32_t rd_le32(const uint8_t* p);
uint16_t rd_be16(const uint8_t* p);
uint32_t rd_be32(const uint8_t* p);
uint64_t rd_be64(const uint8_t* p);
void wr_le16(uint8_t* p, uint16_t v);
void wr_le32(uint8_t* p, uint32_t v);

/// Ordered run log shared across pipeline stages. Thread-safe appends.
class Log {
public:
    void info(std::string msg);
    void warn(std::string msg);

    std::vector<std::string> lines() const;     // every line, in order
    std::vector<std::string> warnings() const;  // only "warn:" lines
    bool has_warning_containing(std::string_view needle) const;

    void set_echo(bool on) { echo_ = on; }

private:
    void append(std::string line);

    mutable std::mutex mu_;
    std::vector<std::string> lines_;
    bool echo_ = false;
};

/// Run `command` through /bin/sh with a wall-clock timeout.
/// Returns the exit code, or -1 when the command was killed or failed to run.
int run_command(const std::string& command, int timeout_seconds);

}  // namespace mcx
