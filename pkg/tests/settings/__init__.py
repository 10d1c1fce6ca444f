"""設定モジュールのテスト。"""
