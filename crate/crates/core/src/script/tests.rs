use super::*;
use crate::syntax::parse;
use crate::ApiMapping;

fn mapping(text: &str) -> ApiMapping {
    ApiMapping::parse(text).unwrap()
}

const MINUTE_MAPPING: &str = "deprecated: android.widget.TimePicker#getCurrentMinute()\nreplacement: android.widget.TimePicker#getMinute()\nguard-symbol: android.os.Build.VERSION_CODES.M\n";

const MINUTE_EXAMPLE: &str = r#"class Clock {
    void show(TimePicker timePicker) {
        int minute;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            minute = timePicker.getMinute();
        } else {
            minute = timePicker.getCurrentMinute();
        }
    }
}
"#;

const ATTRIBUTES_MAPPING: &str = "deprecated: android.media.MediaPlayer#setAudioStreamType(int)\nreplacement: android.media.MediaPlayer#setAudioAttributes(android.media.AudioAttributes)\nguard-symbol: android.os.Build.VERSION_CODES.LOLLIPOP\n";

const ATTRIBUTES_FIELDS: &str = r#"public class AudioPlayer {
    AudioAttributes.Builder builder = new AudioAttributes.Builder();
    AudioAttributes attributes = builder.build();
    MediaPlayer mMediaPlayer;

    private void setAttributes() {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.LOLLIPOP) {
            mMediaPlayer.setAudioAttributes(attributes);
        } else {
            mMediaPlayer.setAudioStreamType(AudioManager.STREAM_MUSIC);
        }
    }
}
"#;

const ATTRIBUTES_INLINE: &str = r#"public class AudioPlayer {
    MediaPlayer mMediaPlayer;

    private void setAttributes() {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.LOLLIPOP) {
            mMediaPlayer.setAudioAttributes(new AudioAttributes.Builder().build());
        } else {
            mMediaPlayer.setAudioStreamType(AudioManager.STREAM_MUSIC);
        }
    }
}
"#;

#[test]
fn minute_script_has_receiver_metavariable_and_no_definitions() {
    let s = generate_script(&parse(MINUTE_EXAMPLE).unwrap(), &mapping(MINUTE_MAPPING)).unwrap();
    assert_eq!(s.metavariables, vec![Metavariable { kind: MetaKind::Identifier, name: "recv".into() }]);
    assert_eq!(s.guard, Guard { symbol: "android.os.Build.VERSION_CODES.M".into(), level: 23 });
    assert!(s.carried_definitions.is_empty());
    assert_eq!(s.match_pattern, vec!["recv.getCurrentMinute();"]);
    assert_eq!(s.replacement_template[1], "    recv.getMinute();");
    assert_eq!(parse_script(&serialize_script(&s)).unwrap(), s);
}

#[test]
fn both_attribute_examples_give_the_same_script() {
    let m = mapping(ATTRIBUTES_MAPPING);
    let a = generate_script(&parse(ATTRIBUTES_FIELDS).unwrap(), &m).unwrap();
    let b = generate_script(&parse(ATTRIBUTES_INLINE).unwrap(), &m).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        b.carried_bindings,
        vec![CarriedBinding { name: "newParameterVariable0".into(), expression: "new AudioAttributes.Builder().build()".into() }]
    );
    let text = serialize_script(&b);
    assert!(text.contains("+     AudioAttributes newParameterVariable0 = new AudioAttributes.Builder().build();\n+     recv.setAudioAttributes(newParameterVariable0);\n+ } else {\n+     recv.setAudioStreamType(e0);\n"));
}

#[test]
fn reversed_example_branches_are_normalized() {
    let src = MINUTE_EXAMPLE
        .replace(">= android.os.Build.VERSION_CODES.M", "< android.os.Build.VERSION_CODES.M")
        .replace("minute = timePicker.getMinute();", "minute = timePicker.TMP();")
        .replace("minute = timePicker.getCurrentMinute();", "minute = timePicker.getMinute();")
        .replace("TMP", "getCurrentMinute");
    let s = generate_script(&parse(&src).unwrap(), &mapping(MINUTE_MAPPING)).unwrap();
    let expected = generate_script(&parse(MINUTE_EXAMPLE).unwrap(), &mapping(MINUTE_MAPPING)).unwrap();
    assert_eq!(s, expected);
}

#[test]
fn generation_errors() {
    let m = mapping(MINUTE_MAPPING);
    let no_guard = parse("class A { void m(TimePicker t) { t.getMinute(); t.getCurrentMinute(); } }").unwrap();
    assert_eq!(generate_script(&no_guard, &m), Err(GenerateError::NoGuardFound));
    let missing =
        parse("class A { void m(TimePicker t) { if (Build.VERSION.SDK_INT >= 23) { t.getMinute(); } else { t.foo(); } } }").unwrap();
    assert!(matches!(generate_script(&missing, &m), Err(GenerateError::MissingInvocation { .. })));
    let same = mapping("deprecated: A#vibrate(long)\nreplacement: A#vibrate(long)\nguard-symbol: android.os.Build.VERSION_CODES.O\n");
    let u = parse("class A { void m() { if (Build.VERSION.SDK_INT >= 26) { v.vibrate(5); } else { v.vibrate(5); } } }").unwrap();
    assert_eq!(generate_script(&u, &same), Err(GenerateError::BothBranchesSameApi));
}

#[test]
fn external_new_argument_is_an_error() {
    let src = ATTRIBUTES_INLINE.replace("new AudioAttributes.Builder().build()", "sharedAttributes");
    let err = generate_script(&parse(&src).unwrap(), &mapping(ATTRIBUTES_MAPPING)).unwrap_err();
    assert_eq!(
        err,
        GenerateError::UnresolvedNewArgument {
            index: 0,
            name: "sharedAttributes".into(),
            reason: crate::flow::UnresolvedReason::ExternalToFile
        }
    );
}

const VIBRATE_MAPPING: &str = "deprecated: android.os.Vibrator#vibrate(long)\nreplacement: android.os.Vibrator#vibrate(android.os.VibrationEffect)\nguard-symbol: android.os.Build.VERSION_CODES.O\n";

const VIBRATE_EXAMPLE: &str = r#"public class MainActivity extends Activity {
    private int duration = 9;
    private int frequency = 3;
    public int amplitude = duration / frequency;
    private Vibrator vibrator;

    public VibrationEffect createVibration(int time, int amplitude) {
        return VibrationEffect.createOneShot(time, amplitude);
    }

    public void onCreate() {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            vibrator.vibrate(createVibration(3, amplitude));
        } else {
            vibrator.vibrate(50);
        }
    }
}
"#;

#[test]
fn vibrate_update_inlines_resolved_argument_and_copies_method() {
    let s = generate_script(&parse(VIBRATE_EXAMPLE).unwrap(), &mapping(VIBRATE_MAPPING)).unwrap();
    assert_eq!(s.carried_definitions.len(), 1);
    assert_eq!(s.carried_bindings[0].expression, "createVibration(3, 9 / 3)");
    let target =
        parse("class Buzzer {\n    private Vibrator vib;\n\n    void buzz(long ms) {\n        vib.vibrate(ms);\n    }\n}\n").unwrap();
    let (out, report) = apply_script(&s, &target).unwrap();
    assert_eq!(report.count(Outcome::Updated), 1);
    assert_eq!(
        out.text,
        "class Buzzer {\n    private Vibrator vib;\n\n    void buzz(long ms) {\n        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {\n            vib.vibrate(createVibration(3, 9 / 3));\n        } else {\n            vib.vibrate(ms);\n        }\n    }\n\n    public VibrationEffect createVibration(int time, int amplitude) {\n        return VibrationEffect.createOneShot(time, amplitude);\n    }\n}\n"
    );
    let check = check_update_shape(&out.text, &s, 1, &report.copied_definitions, true);
    assert!(check.passed(), "{:?}", check.problems);
}

#[test]
fn colliding_copied_method_is_renamed_at_the_call_site() {
    let s = generate_script(&parse(VIBRATE_EXAMPLE).unwrap(), &mapping(VIBRATE_MAPPING)).unwrap();
    let target = parse("class Buzzer {\n    Vibrator vib;\n\n    int createVibration() { return 0; }\n\n    void buzz() {\n        vib.vibrate(20);\n    }\n}\n").unwrap();
    let (out, report) = apply_script(&s, &target).unwrap();
    assert!(out.text.contains("vib.vibrate(createVibration1(3, 9 / 3));"), "{}", out.text);
    assert!(out.text.contains("public VibrationEffect createVibration1(int time, int amplitude)"));
    assert_eq!(report.copied_definitions, vec!["createVibration1"]);
    for call in out.ids().filter(|id| matches!(out.kind(*id), crate::syntax::NodeKind::MethodInvocation { has_receiver: false, .. })) {
        let crate::syntax::NodeKind::MethodInvocation { name, .. } = out.kind(call) else { unreachable!() };
        assert!(crate::syntax::query::declared_type_and_method_names(&out).contains(&name.text));
    }
}

#[test]
fn multiple_sites_guarded_and_idempotent() {
    let s = generate_script(&parse(MINUTE_EXAMPLE).unwrap(), &mapping(MINUTE_MAPPING)).unwrap();
    let target = parse(
        "class Alarm {\n    TimePicker picker;\n\n    int total(TimePicker other) {\n        int a = picker.getCurrentMinute();\n        int b = other.getCurrentMinute();\n        return a + b;\n    }\n}\n",
    )
    .unwrap();
    let (out, report) = apply_script(&s, &target).unwrap();
    assert_eq!(report.count(Outcome::Updated), 2);
    assert_eq!(
        out.text,
        "class Alarm {\n    TimePicker picker;\n\n    int total(TimePicker other) {\n        int a;\n        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {\n            a = picker.getMinute();\n        } else {\n            a = picker.getCurrentMinute();\n        }\n        int b;\n        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {\n            b = other.getMinute();\n        } else {\n            b = other.getCurrentMinute();\n        }\n        return a + b;\n    }\n}\n"
    );
    let (again, report2) = apply_script(&s, &out).unwrap();
    assert_eq!(again.text, out.text);
    assert_eq!(report2.count(Outcome::SkippedAlreadyGuarded), 2);
}

#[test]
fn pre_guarded_target_is_untouched() {
    let s = generate_script(&parse(MINUTE_EXAMPLE).unwrap(), &mapping(MINUTE_MAPPING)).unwrap();
    let t = parse(MINUTE_EXAMPLE).unwrap();
    let (out, report) = apply_script(&s, &t).unwrap();
    assert_eq!(out.text, t.text);
    assert_eq!(report.outcomes.len(), 1);
    assert_eq!(report.outcomes[0].outcome, Outcome::SkippedAlreadyGuarded);
}

#[test]
fn two_calls_in_one_statement() {
    let m = mapping("deprecated: android.widget.TimePicker#getCurrentHour()\nreplacement: android.widget.TimePicker#getHour()\nguard-symbol: android.os.Build.VERSION_CODES.M\n");
    let example = MINUTE_EXAMPLE.replace("getMinute", "getHour").replace("getCurrentMinute", "getCurrentHour");
    let s = generate_script(&parse(&example).unwrap(), &m).unwrap();
    let t = parse(
        "class A {\n    void m(TimePicker tp) {\n        String time = tp.getCurrentHour() + \":\" + tp.getCurrentHour();\n    }\n}\n",
    )
    .unwrap();
    let (out, report) = apply_script(&s, &t).unwrap();
    assert_eq!(report.count(Outcome::Updated), 1);
    assert_eq!(report.count(Outcome::SkippedDuplicateInStatement), 1);
    let (again, _) = apply_script(&s, &out).unwrap();
    assert_eq!(again.text, out.text);
}

#[test]
fn normalized_output_keeps_temporaries() {
    let s = generate_script(&parse(MINUTE_EXAMPLE).unwrap(), &mapping(MINUTE_MAPPING)).unwrap();
    let t = parse("class A {\n    void m(TimePicker tp) {\n        int x = tp.getCurrentMinute();\n    }\n}\n").unwrap();
    let opts = ApplyOptions { denormalize: false, signature: None };
    let (out, _) = apply_script_with(&s, &t, &opts).unwrap();
    assert_eq!(
        out.text,
        "class A {\n    void m(TimePicker tp) {\n        TimePicker classNameVariable = tp;\n        int tempFunctionReturnValue;\n        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {\n            tempFunctionReturnValue = classNameVariable.getMinute();\n        } else {\n            tempFunctionReturnValue = classNameVariable.getCurrentMinute();\n        }\n        int x = tempFunctionReturnValue;\n    }\n}\n"
    );
    let check = check_update_shape(&out.text, &s, 1, &[], true);
    assert!(!check.passed());
}

const PLAYER_EXAMPLE: &str = r#"public class Player implements AudioManager.OnAudioFocusChangeListener {
    AudioFocusRequestOreo audioFocusRequestOreo = new AudioFocusRequestOreo(this);
    AudioManager audioManager;

    public void tryToGetAudioFocus() {
        OnAudioFocusChangeListener listener = this;
        int result;
        int type = AudioManager.STREAM_MUSIC;
        int duration = AudioManager.AUDIOFOCUS_GAIN;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.O) {
            AudioFocusRequest request = audioFocusRequestOreo.getAudioFocusRequest();
            result = audioManager.requestAudioFocus(request);
        } else {
            result = audioManager.requestAudioFocus(listener, type, duration);
        }
    }

    private class AudioFocusRequestOreo {
        private AudioFocusRequest audioFocusRequest;

        private AudioFocusRequestOreo(AudioManager.OnAudioFocusChangeListener listener) {
            audioFocusRequest = new AudioFocusRequest.Builder(AudioManager.AUDIOFOCUS_GAIN).build();
        }

        AudioFocusRequest getAudioFocusRequest() {
            return audioFocusRequest;
        }
    }
}
"#;

#[test]
fn audio_focus_class_is_carried_and_copied_as_a_member() {
    let m = mapping("deprecated: android.media.AudioManager#requestAudioFocus(android.media.AudioManager.OnAudioFocusChangeListener,int,int)\nreplacement: android.media.AudioManager#requestAudioFocus(android.media.AudioFocusRequest)\nguard-symbol: android.os.Build.VERSION_CODES.O\n");
    let s = generate_script(&parse(PLAYER_EXAMPLE).unwrap(), &m).unwrap();
    assert_eq!(s.carried_definitions.len(), 1);
    assert_eq!(s.carried_definitions[0].qualified_name, "Player.AudioFocusRequestOreo");
    assert!(serialize_script(&s).contains("@defs@\n// class Player.AudioFocusRequestOreo\nprivate class AudioFocusRequestOreo {\n"));
    let target = parse(
        "public class MusicService implements AudioManager.OnAudioFocusChangeListener {\n    private AudioManager am;\n\n    boolean focus() {\n        int r = am.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);\n        return r == AudioManager.AUDIOFOCUS_REQUEST_GRANTED;\n    }\n}\n",
    )
    .unwrap();
    let (out, report) = apply_script(&s, &target).unwrap();
    assert_eq!(report.count(Outcome::Updated), 1, "{:?}", report);
    assert!(out.text.contains("r = am.requestAudioFocus(new AudioFocusRequestOreo(this).getAudioFocusRequest());"), "{}", out.text);
    assert!(out.text.contains("r = am.requestAudioFocus(this, AudioManager.STREAM_MUSIC, AudioManager.AUDIOFOCUS_GAIN);"));
    assert!(out.text.contains("\n\n    public class AudioFocusRequestOreo {\n        private AudioFocusRequest audioFocusRequest;\n\n        public AudioFocusRequestOreo(AudioManager.OnAudioFocusChangeListener listener) {"), "{}", out.text);
    assert!(out.text.contains("        public AudioFocusRequest getAudioFocusRequest() {"));
    let check = check_update_shape(&out.text, &s, 1, &report.copied_definitions, true);
    assert!(check.passed(), "{:?}", check.problems);
}
