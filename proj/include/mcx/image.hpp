#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mcx/util.hpp"

namespace mcx {

/// Read-only random access to a raw ("dd") image. Safe for concurrent
/// reads from multiple threads: every read is a positioned pread(2).
class ImageFile {
public:
    explicit ImageFile(const std::filesystem::path& path);
    ~ImageFile();
    ImageFile(const ImageFile&) = delete;
    ImageFile& operator=(const ImageFile&) = delete;

    uint64_t file_size() const { return file_size_; }
    size_t read_at(uint64_t offset, uint8_t* buf, size_t len) const;

private:
    int fd_ = -1;
    uint64_t file_size_ = 0;
};

struct DiskImage {
    std::string path;
    uint64_t size = 0;  // bytes, rounded down to a sector multiple
    uint32_t sector_size = 512;
    std::shared_ptr<const ImageFile> file;

    /// Bounds-checked read: returns min(len, size - offset) bytes,
    /// empty when offset is at or past the end.
    Bytes read(uint64_t offset, size_t len) const;
};

struct PartitionEntry {
    int index = 0;          // 0..3, or 0 for a synthetic whole-image entry
    uint64_t start_lba = 0;
    uint64_t length = 0;    // sectors
    uint8_t type_code = 0;
    bool synthetic = false; // superfloppy: no MBR, volume at offset 0
};

DiskImage open_image(const std::filesystem::path& path, Log& log, uint32_t sector_size = 512);

/// Parses the MBR at sector 0. When sector 0 is itself a FAT boot sector
/// (superfloppy media), returns a single synthetic whole-image entry.
/// An image with neither is a valid empty result.
std::vector<PartitionEntry> parse_partitions(const DiskImage& img, Log& log);

/// Plausibility check used for superfloppy detection.
bool looks_like_fat_boot_sector(std::span<const uint8_t> sector);

}  // namespace mcx
