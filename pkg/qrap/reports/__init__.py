from .reports import load_family_spec, write_counts_csv, write_json, write_stats_csv, write_verification, write_weil_csv
