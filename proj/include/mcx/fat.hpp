#pragma once

#include <string>
#include <vector>

#include "mcx/image.hpp"
#include "mcx/util.hpp"

namespace mcx {

enum class FatVariant { fat12, fat16, fat32 };

const char* fat_variant_name(FatVariant v);

/// FAT wall-clock stamp: 2-second resolution, no timezone (device local).
struct FatTime {
    uint16_t date = 0;
    uint16_t time = 0;
    bool valid() const { return date != 0; }
    std::string to_string() const;  // "YYYY-MM-DD HH:MM:SS", "" when unset
};

struct DirRecord {
    std::string name;         // long name when LFN entries are present, else 8.3
    std::string path;         // '/'-separated, rooted at the volume
    uint8_t attributes = 0;   // raw FAT attribute byte
    uint32_t first_cluster = 0;
    uint64_t size = 0;        // 0 for directories
    FatTime mtime;
    bool deleted = false;

    bool is_read_only() const { return attributes & 0x01; }
    bool is_hidden() const { return attributes & 0x02; }
    bool is_system() const { return attributes & 0x04; }
    bool is_volume_label() const { return attributes & 0x08; }
    bool is_directory() const { return attributes & 0x10; }
    bool is_archive() const { return attributes & 0x20; }
};

struct FatVolume {
    FatVariant variant = FatVariant::fat16;
    uint32_t bytes_per_sector = 0;
    uint32_t sectors_per_cluster = 0;
    uint32_t reserved_sectors = 0;
    uint32_t fat_count = 0;
    uint32_t fat_size_sectors = 0;
    uint32_t root_entry_count = 0;   // FAT12/16
    uint32_t root_dir_cluster = 0;   // FAT32
    uint32_t total_clusters = 0;     // data clusters
    uint64_t volume_offset = 0;      // bytes into the image
    uint64_t volume_length = 0;      // bytes

    DiskImage image;
    Bytes fat;  // first FAT copy, cached at parse time

    uint32_t cluster_bytes() const { return bytes_per_sector * sectors_per_cluster; }
    uint64_t root_dir_offset() const;   // FAT12/16 fixed root area (volume-relative)
    uint64_t data_offset() const;       // first data sector (volume-relative)
    uint64_t cluster_offset(uint32_t cluster) const;  // volume-relative
    uint32_t fat_entry(uint32_t cluster) const;
    bool is_end_of_chain(uint32_t entry) const;
    bool cluster_in_range(uint32_t cluster) const {
        return cluster >= 2 && cluster < total_clusters + 2;
    }

    /// Read volume bytes; never touches the image outside
    /// [volume_offset, volume_offset + volume_length).
    Bytes read(uint64_t volume_relative_offset, size_t len) const;
};

FatVolume parse_fat_volume(const DiskImage& img, const PartitionEntry& part, Log& log);

/// Depth-first listing in on-disk order. Deleted entries (first name byte
/// 0xE5) are included iff include_deleted. Corrupt subtrees are skipped
/// and logged, never fatal.
std::vector<DirRecord> walk_directory_tree(const FatVolume& vol, bool include_deleted, Log& log);

/// Allocated files follow the FAT chain for exactly rec.size bytes.
/// Deleted files fall back to a contiguous read from first_cluster (the
/// chain is destroyed on deletion); that heuristic is noted in the log.
Bytes read_file_content(const FatVolume& vol, const DirRecord& rec, Log& log);

}  // namespace mcx
