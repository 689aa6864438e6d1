// Wire types mirroring the workbench service's JSON documents exactly.
export const ANNOTATION_PROVIDER_ID = "human-annotation";
