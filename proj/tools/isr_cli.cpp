// isr command line: configuration-driven sweeps and oracle comparisons.
//
//   isr run <config> [--out PATH] [--json] [--verbose]
//   isr compare <config> [--out PATH] [--verbose]
//   isr presets
//
// Built purely on the C API in isr/isr.h.

#include <stdio.h>
#include <string.h>

#include "isr/isr.h"

static void usage(FILE* to) {
    fprintf(to,
            "usage: isr <command> [args]\n"
            "\n"
            "commands:\n"
            "  run <config>      evaluate the sweep described by a config file\n"
            "                    [--out PATH] [--json] [--verbose]\n"
            "  compare <config>  oracle comparison report for a config file\n"
            "                    [--out PATH] [--verbose]\n"
            "  presets           print the built-in figure-family configs\n"
            "  version           print the library version\n");
}

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(stderr);
        return 2;
    }
    const char* cmd = argv[1];

    if (strcmp(cmd, "presets") == 0) {
        char* text = isr_presets();
        if (!text) {
            fprintf(stderr, "error: %s\n", isr_last_error());
            return 1;
        }
        fputs(text, stdout);
        isr_string_free(text);
        return 0;
    }
    if (strcmp(cmd, "version") == 0) {
        printf("isr %s\n", isr_version());
        return 0;
    }
    if (strcmp(cmd, "--help") == 0 || strcmp(cmd, "-h") == 0 || strcmp(cmd, "help") == 0) {
        usage(stdout);
        return 0;
    }

    if (strcmp(cmd, "run") == 0 || strcmp(cmd, "compare") == 0) {
        if (argc < 3) {
            fprintf(stderr, "error: %s requires a config file\n", cmd);
            usage(stderr);
            return 2;
        }
        const char* config = argv[2];
        const char* out = NULL;
        int as_json = 0, verbose = 0;
        for (int i = 3; i < argc; ++i) {
            if (strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
                out = argv[++i];
            } else if (strcmp(argv[i], "--json") == 0) {
                as_json = 1;
            } else if (strcmp(argv[i], "--verbose") == 0) {
                verbose = 1;
            } else {
                fprintf(stderr, "error: unknown option %s\n", argv[i]);
                return 2;
            }
        }
        isr_status st;
        long detail = 0;
        if (strcmp(cmd, "run") == 0)
            st = isr_run_sweep(config, out, as_json, verbose, &detail);
        else
            st = isr_run_compare(config, out, verbose, &detail);
        if (st == ISR_ERR_POINT_FAILURES) {
            fprintf(stderr, "warning: %ld per-point failures (%s)\n", detail, isr_last_error());
            return 1;
        }
        if (st != ISR_OK) {
            fprintf(stderr, "error: %s\n", isr_last_error());
            return 1;
        }
        return 0;
    }

    fprintf(stderr, "error: unknown command '%s'\n", cmd);
    usage(stderr);
    return 2;
}
